#include "tuc/net.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tuc {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

void forward(const PolicyParams& params, const AgentObservation& obs, ForwardTrace& trace) {
    const double s0 = static_cast<double>(obs.own_strategy);
    const double s1 = static_cast<double>(obs.coop_neighbors);
    const double s2 = obs.global_coop_rate;
    if (!(std::isfinite(s0) && std::isfinite(s1) && std::isfinite(s2))) {
        throw std::invalid_argument("non-finite observation fed to policy network");
    }
    trace.input = {s0, s1, s2};

    const double* p = params.raw.data();

    // z1 = W1 s + b1, accumulated column by column
    for (int i = 0; i < kHidden; ++i) trace.z1[i] = p[kB1Off + i];
    const double* w1c = p + kW1Off;
    for (int i = 0; i < kHidden; ++i) trace.z1[i] += w1c[i] * s0;
    for (int i = 0; i < kHidden; ++i) trace.z1[i] += w1c[kHidden + i] * s1;
    for (int i = 0; i < kHidden; ++i) trace.z1[i] += w1c[2 * kHidden + i] * s2;
    for (int i = 0; i < kHidden; ++i) trace.h1[i] = trace.z1[i] > 0.0 ? trace.z1[i] : 0.0;

    // z2 = W2 h1 + b2
    for (int i = 0; i < kHidden; ++i) trace.z2[i] = p[kB2Off + i];
    for (int j = 0; j < kHidden; ++j) {
        const double hj = trace.h1[j];
        const double* col = p + kW2Off + j * kHidden;
        for (int i = 0; i < kHidden; ++i) trace.z2[i] += col[i] * hj;
    }
    for (int i = 0; i < kHidden; ++i) trace.h2[i] = trace.z2[i] > 0.0 ? trace.z2[i] : 0.0;

    // actor head
    for (int k = 0; k < kActions; ++k) {
        const double* row = p + kWaOff + k * kHidden;
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
        for (int i = 0; i < kHidden; i += 4) {
            a0 += row[i] * trace.h2[i];
            a1 += row[i + 1] * trace.h2[i + 1];
            a2 += row[i + 2] * trace.h2[i + 2];
            a3 += row[i + 3] * trace.h2[i + 3];
        }
        trace.logits[k] = (a0 + a1) + (a2 + a3) + p[kBaOff + k];
    }
    const double m = trace.logits[0] > trace.logits[1] ? trace.logits[0] : trace.logits[1];
    const double e0 = std::exp(trace.logits[0] - m);
    const double e1 = std::exp(trace.logits[1] - m);
    const double z = e0 + e1;
    trace.probs[0] = e0 / z;
    trace.probs[1] = e1 / z;

    // critic head
    {
        const double* row = p + kWvOff;
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
        for (int i = 0; i < kHidden; i += 4) {
            a0 += row[i] * trace.h2[i];
            a1 += row[i + 1] * trace.h2[i + 1];
            a2 += row[i + 2] * trace.h2[i + 2];
            a3 += row[i + 3] * trace.h2[i + 3];
        }
        trace.value = (a0 + a1) + (a2 + a3) + p[kBvOff];
    }
}

ForwardTrace forward(const PolicyParams& params, const AgentObservation& obs) {
    ForwardTrace trace;
    forward(params, obs, trace);
    return trace;
}

double action_log_prob(const ForwardTrace& trace, int action) {
    const double m = trace.logits[0] > trace.logits[1] ? trace.logits[0] : trace.logits[1];
    const double z = std::exp(trace.logits[0] - m) + std::exp(trace.logits[1] - m);
    return trace.logits[action] - m - std::log(z);
}

void backward(const PolicyParams& params, const ForwardTrace& trace,
              const std::array<double, kActions>& d_logits, double d_value,
              ParamBlock& grad) {
    const double* p = params.raw.data();
    double* g = grad.data();

    // heads
    std::array<double, kHidden> dh2;
    for (int i = 0; i < kHidden; ++i) dh2[i] = d_value * p[kWvOff + i];
    for (int k = 0; k < kActions; ++k) {
        const double dk = d_logits[k];
        const double* row = p + kWaOff + k * kHidden;
        double* grow = g + kWaOff + k * kHidden;
        for (int i = 0; i < kHidden; ++i) {
            grow[i] += dk * trace.h2[i];
            dh2[i] += dk * row[i];
        }
        g[kBaOff + k] += dk;
    }
    for (int i = 0; i < kHidden; ++i) g[kWvOff + i] += d_value * trace.h2[i];
    g[kBvOff] += d_value;

    // layer 2
    std::array<double, kHidden> dz2;
    for (int i = 0; i < kHidden; ++i) dz2[i] = trace.z2[i] > 0.0 ? dh2[i] : 0.0;
    for (int j = 0; j < kHidden; ++j) {
        const double hj = trace.h1[j];
        double* gcol = g + kW2Off + j * kHidden;
        for (int i = 0; i < kHidden; ++i) gcol[i] += dz2[i] * hj;
    }
    for (int i = 0; i < kHidden; ++i) g[kB2Off + i] += dz2[i];

    std::array<double, kHidden> dh1;
    for (int j = 0; j < kHidden; ++j) {
        const double* col = p + kW2Off + j * kHidden;
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
        for (int i = 0; i < kHidden; i += 4) {
            a0 += col[i] * dz2[i];
            a1 += col[i + 1] * dz2[i + 1];
            a2 += col[i + 2] * dz2[i + 2];
            a3 += col[i + 3] * dz2[i + 3];
        }
        dh1[j] = (a0 + a1) + (a2 + a3);
    }

    // layer 1
    std::array<double, kHidden> dz1;
    for (int i = 0; i < kHidden; ++i) dz1[i] = trace.z1[i] > 0.0 ? dh1[i] : 0.0;
    for (int j = 0; j < kObsDim; ++j) {
        const double sj = trace.input[j];
        double* gcol = g + kW1Off + j * kHidden;
        for (int i = 0; i < kHidden; ++i) gcol[i] += dz1[i] * sj;
    }
    for (int i = 0; i < kHidden; ++i) g[kB1Off + i] += dz1[i];
}

void adam_step(PolicyParams& params, const ParamBlock& grads, AdamState& state, double lr) {
    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    const double b1 = state.beta1, b2 = state.beta2;
    double* m = state.first_moment.data();
    double* v = state.second_moment.data();
    double* p = params.raw.data();
    const double* grd = grads.data();
    for (int i = 0; i < kParamCount; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * grd[i];
        v[i] = b2 * v[i] + (1.0 - b2) * grd[i] * grd[i];
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + state.eps);
    }
}

double effective_lr(const AdamState& state, int64_t iteration) {
    if (iteration < 0) throw std::invalid_argument("iteration must be non-negative");
    return std::ldexp(state.base_lr, -static_cast<int>(iteration / 1000));
}

PolicyParams init_params(Rng& rng) {
    PolicyParams params;
    auto draw = [&rng](double limit) { return -limit + 2.0 * limit * rng.uniform(); };
    const double lim1 = std::sqrt(1.0 / kObsDim);
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kObsDim; ++j) params.w1(i, j) = draw(lim1);
    const double lim = std::sqrt(1.0 / kHidden);
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kHidden; ++j) params.w2(i, j) = draw(lim);
    for (int k = 0; k < kActions; ++k)
        for (int i = 0; i < kHidden; ++i) params.wa(k, i) = draw(lim);
    for (int i = 0; i < kHidden; ++i) params.wv(i) = draw(lim);
    return params;
}

namespace {

constexpr char kMagic[12] = {'T', 'U', 'C', 'P', 'P', 'O', '-', 'C', 'K', 'P', 'T', '\0'};
constexpr uint32_t kVersion = 1;

// internal layout -> documented external field order (W1 row-major, b1,
// W2 row-major, b2, Wa row-major, ba, wv, bv)
std::vector<double> to_external(const ParamBlock& raw) {
    PolicyParams p;
    p.raw = raw;
    std::vector<double> out;
    out.reserve(kParamCount);
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kObsDim; ++j) out.push_back(p.w1(i, j));
    for (int i = 0; i < kHidden; ++i) out.push_back(p.b1(i));
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kHidden; ++j) out.push_back(p.w2(i, j));
    for (int i = 0; i < kHidden; ++i) out.push_back(p.b2(i));
    for (int k = 0; k < kActions; ++k)
        for (int i = 0; i < kHidden; ++i) out.push_back(p.wa(k, i));
    for (int k = 0; k < kActions; ++k) out.push_back(p.ba(k));
    for (int i = 0; i < kHidden; ++i) out.push_back(p.wv(i));
    out.push_back(p.bv());
    return out;
}

void from_external(const std::vector<double>& in, ParamBlock& raw) {
    PolicyParams p;
    size_t n = 0;
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kObsDim; ++j) p.w1(i, j) = in[n++];
    for (int i = 0; i < kHidden; ++i) p.b1(i) = in[n++];
    for (int i = 0; i < kHidden; ++i)
        for (int j = 0; j < kHidden; ++j) p.w2(i, j) = in[n++];
    for (int i = 0; i < kHidden; ++i) p.b2(i) = in[n++];
    for (int k = 0; k < kActions; ++k)
        for (int i = 0; i < kHidden; ++i) p.wa(k, i) = in[n++];
    for (int k = 0; k < kActions; ++k) p.ba(k) = in[n++];
    for (int i = 0; i < kHidden; ++i) p.wv(i) = in[n++];
    p.bv() = in[n++];
    raw = p.raw;
}

void write_doubles(std::ofstream& out, const std::vector<double>& values) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::ifstream& in, size_t count) {
    std::vector<double> values(count);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint truncated");
    return values;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params,
                     const AdamState& adam, const DualState* dual) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
    write_doubles(out, to_external(params.raw));
    write_doubles(out, to_external(adam.first_moment));
    write_doubles(out, to_external(adam.second_moment));
    out.write(reinterpret_cast<const char*>(&adam.step_count), sizeof adam.step_count);
    const double consts[4] = {adam.base_lr, adam.beta1, adam.beta2, adam.eps};
    out.write(reinterpret_cast<const char*>(consts), sizeof consts);
    if (dual) {
        const double d[5] = {dual->eta, dual->tau_threshold, dual->zeta, dual->cum_team,
                             dual->cum_ind};
        out.write(reinterpret_cast<const char*>(d), sizeof d);
    }
    if (!out) throw std::runtime_error("short write to " + path.string());
}

void load_checkpoint(const std::filesystem::path& path, PolicyParams& params,
                     AdamState& adam, DualState* dual) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[12];
    uint32_t version = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw std::runtime_error(path.string() + " is not a checkpoint file");
    }
    if (version != kVersion) {
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    }
    from_external(read_doubles(in, kParamCount), params.raw);
    from_external(read_doubles(in, kParamCount), adam.first_moment);
    from_external(read_doubles(in, kParamCount), adam.second_moment);
    in.read(reinterpret_cast<char*>(&adam.step_count), sizeof adam.step_count);
    double consts[4];
    in.read(reinterpret_cast<char*>(consts), sizeof consts);
    if (!in) throw std::runtime_error("checkpoint truncated");
    adam.base_lr = consts[0];
    adam.beta1 = consts[1];
    adam.beta2 = consts[2];
    adam.eps = consts[3];
    if (dual) {
        double d[5];
        in.read(reinterpret_cast<char*>(d), sizeof d);
        if (!in) throw std::runtime_error("checkpoint truncated (dual state)");
        dual->eta = d[0];
        dual->tau_threshold = d[1];
        dual->zeta = d[2];
        dual->cum_team = d[3];
        dual->cum_ind = d[4];
    }
}

}  // namespace tuc
