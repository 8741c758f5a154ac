#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tuc {

struct RunOutcome {
    double r = 0.0;
    uint64_t seed = 0;
    double final_coop_fraction = 0.0;
    int64_t iterations_run = 0;
};

// Per-r summary. ci bounds are NaN exactly when the group's std is zero;
// finite bounds are reported unclipped (they may leave [0,1]).
struct CISummary {
    double r = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Groups outcomes by r, ascending; per group computes the mean, sample std
// (n-1 denominator), and 1.96-z normal confidence interval. Requires at
// least 2 trials per group. Samples are sorted before summation, so the
// result is exactly permutation-invariant.
std::vector<CISummary> aggregate(const std::vector<RunOutcome>& outcomes);

// violin.csv: (r, seed, final_coop_fraction), one row per trial, sorted by (r, seed)
void write_violin_csv(const std::filesystem::path& path,
                      const std::vector<RunOutcome>& outcomes);

// ci_table.csv: (algorithm, r, mean, std, ci_low, ci_high), literal `nan` tokens
void write_ci_table_csv(const std::filesystem::path& path, const std::string& algorithm,
                        const std::vector<CISummary>& summaries);

// errbar.csv: (algorithm, r, mean, std)
void write_errbar_csv(const std::filesystem::path& path, const std::string& algorithm,
                      const std::vector<CISummary>& summaries);

}  // namespace tuc
