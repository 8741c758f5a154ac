#include "tuc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "tuc/text.hpp"

namespace tuc {

std::vector<CISummary> aggregate(const std::vector<RunOutcome>& outcomes) {
    std::map<double, std::vector<double>> groups;
    for (const auto& o : outcomes) groups[o.r].push_back(o.final_coop_fraction);

    std::vector<CISummary> summaries;
    summaries.reserve(groups.size());
    for (auto& [r, samples] : groups) {
        const size_t n = samples.size();
        if (n < 2) {
            throw std::invalid_argument("need at least 2 trials per r group, r = " +
                                        format_double(r));
        }
        std::sort(samples.begin(), samples.end());

        CISummary s;
        s.r = r;
        if (samples.front() == samples.back()) {
            // deterministic group: zero variance, interval undefined
            s.mean = samples.front();
            s.std_dev = 0.0;
            s.ci_low = std::numeric_limits<double>::quiet_NaN();
            s.ci_high = std::numeric_limits<double>::quiet_NaN();
        } else {
            double sum = 0.0;
            for (double v : samples) sum += v;
            s.mean = sum / static_cast<double>(n);
            double sq = 0.0;
            for (double v : samples) sq += (v - s.mean) * (v - s.mean);
            s.std_dev = std::sqrt(sq / static_cast<double>(n - 1));
            const double half = 1.96 * s.std_dev / std::sqrt(static_cast<double>(n));
            s.ci_low = s.mean - half;
            s.ci_high = s.mean + half;
        }
        summaries.push_back(s);
    }
    return summaries;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // fixed '\n' line endings
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

void write_violin_csv(const std::filesystem::path& path,
                      const std::vector<RunOutcome>& outcomes) {
    std::vector<RunOutcome> sorted = outcomes;
    std::sort(sorted.begin(), sorted.end(), [](const RunOutcome& a, const RunOutcome& b) {
        if (a.r != b.r) return a.r < b.r;
        return a.seed < b.seed;
    });
    auto out = open_csv(path);
    out << "r,seed,final_coop_fraction\n";
    for (const auto& o : sorted) {
        out << format_double(o.r) << "," << o.seed << ","
            << format_double(o.final_coop_fraction) << "\n";
    }
}

void write_ci_table_csv(const std::filesystem::path& path, const std::string& algorithm,
                        const std::vector<CISummary>& summaries) {
    auto out = open_csv(path);
    out << "algorithm,r,mean,std,ci_low,ci_high\n";
    for (const auto& s : summaries) {
        out << algorithm << "," << format_double(s.r) << "," << format_double(s.mean) << ","
            << format_double(s.std_dev) << "," << format_double(s.ci_low) << ","
            << format_double(s.ci_high) << "\n";
    }
}

void write_errbar_csv(const std::filesystem::path& path, const std::string& algorithm,
                      const std::vector<CISummary>& summaries) {
    auto out = open_csv(path);
    out << "algorithm,r,mean,std\n";
    for (const auto& s : summaries) {
        out << algorithm << "," << format_double(s.r) << "," << format_double(s.mean) << ","
            << format_double(s.std_dev) << "\n";
    }
}

}  // namespace tuc
