#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "tuc/grid.hpp"
#include "tuc/rng.hpp"

namespace tuc {

// Shared actor-critic net: 3 -> 64 -> 64 ReLU encoder, 2-way softmax actor
// head, scalar critic head. All math in 64-bit floats.
inline constexpr int kObsDim = 3;
inline constexpr int kHidden = 64;
inline constexpr int kActions = 2;

// Flat parameter block. Internal layout (offsets below): W1 and W2 are
// stored column-major so the forward/backward inner loops run over
// contiguous memory; Wa is row-major. The checkpoint byte order is the
// documented external one (row-major W1, b1, W2, b2, Wa, ba, wv, bv) and the
// I/O layer transposes between the two.
inline constexpr int kW1Off = 0;
inline constexpr int kB1Off = kW1Off + kHidden * kObsDim;
inline constexpr int kW2Off = kB1Off + kHidden;
inline constexpr int kB2Off = kW2Off + kHidden * kHidden;
inline constexpr int kWaOff = kB2Off + kHidden;
inline constexpr int kBaOff = kWaOff + kActions * kHidden;
inline constexpr int kWvOff = kBaOff + kActions;
inline constexpr int kBvOff = kWvOff + kHidden;
inline constexpr int kParamCount = kBvOff + 1;

using ParamBlock = std::array<double, kParamCount>;

struct PolicyParams {
    ParamBlock raw{};

    double& w1(int i, int j) { return raw[kW1Off + j * kHidden + i]; }
    double w1(int i, int j) const { return raw[kW1Off + j * kHidden + i]; }
    double& b1(int i) { return raw[kB1Off + i]; }
    double b1(int i) const { return raw[kB1Off + i]; }
    double& w2(int i, int j) { return raw[kW2Off + j * kHidden + i]; }
    double w2(int i, int j) const { return raw[kW2Off + j * kHidden + i]; }
    double& b2(int i) { return raw[kB2Off + i]; }
    double b2(int i) const { return raw[kB2Off + i]; }
    double& wa(int k, int i) { return raw[kWaOff + k * kHidden + i]; }
    double wa(int k, int i) const { return raw[kWaOff + k * kHidden + i]; }
    double& ba(int k) { return raw[kBaOff + k]; }
    double ba(int k) const { return raw[kBaOff + k]; }
    double& wv(int i) { return raw[kWvOff + i]; }
    double wv(int i) const { return raw[kWvOff + i]; }
    double& bv() { return raw[kBvOff]; }
    double bv() const { return raw[kBvOff]; }

    bool operator==(const PolicyParams&) const = default;
};

struct AdamState {
    ParamBlock first_moment{};
    ParamBlock second_moment{};
    uint64_t step_count = 0;
    double base_lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Intermediates retained for backprop.
struct ForwardTrace {
    std::array<double, kObsDim> input;
    std::array<double, kHidden> z1, h1;  // pre-activation / activation, layer 1
    std::array<double, kHidden> z2, h2;  // pre-activation / activation, layer 2
    std::array<double, kActions> logits;
    std::array<double, kActions> probs;
    double value = 0.0;
};

// h = ReLU(W2 ReLU(W1 s + b1) + b2); probs = softmax(Wa h + ba) with
// max-subtraction; value = wv.h + bv. Throws on non-finite input.
void forward(const PolicyParams& params, const AgentObservation& obs, ForwardTrace& trace);
ForwardTrace forward(const PolicyParams& params, const AgentObservation& obs);

// log pi(action), computed as logit - max - log(sum exp(logit - max)) so it
// stays finite even when the probability underflows.
double action_log_prob(const ForwardTrace& trace, int action);

// Exact analytic gradient of a scalar loss whose partials at the heads are
// dL/dlogits and dL/dvalue. Accumulates into grad.
void backward(const PolicyParams& params, const ForwardTrace& trace,
              const std::array<double, kActions>& d_logits, double d_value,
              ParamBlock& grad);

// Standard Adam with bias correction, applied at the given learning rate.
void adam_step(PolicyParams& params, const ParamBlock& grads, AdamState& state, double lr);

// Step decay: base_lr * 0.5^floor(iteration / 1000).
double effective_lr(const AdamState& state, int64_t iteration);

// Weights ~ uniform(-sqrt(1/fan_in), +sqrt(1/fan_in)), biases zero. Draw
// order: W1, W2, Wa, wv, each row-major.
PolicyParams init_params(Rng& rng);

// Lagrangian trainer state: multiplier eta, threshold tau, dual step zeta,
// and the run-lifetime reward accumulators driving the adaptive weight.
struct DualState {
    double eta = 0.0;
    double tau_threshold = 0.5;
    double zeta = 0.01;
    double cum_team = 0.0;
    double cum_ind = 0.0;
};

// Flat little-endian binary checkpoint: 16-byte header (magic + version),
// params in documented field order, Adam moments in the same order plus
// step count and constants, optionally the dual state.
void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params,
                     const AdamState& adam, const DualState* dual = nullptr);
void load_checkpoint(const std::filesystem::path& path, PolicyParams& params,
                     AdamState& adam, DualState* dual = nullptr);

}  // namespace tuc
