#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tuc/grid.hpp"
#include "tuc/net.hpp"
#include "tuc/payoff.hpp"

namespace tuc {

// One policy snapshot's experience. Rows are step-major: row(t, i) lives at
// t * n_agents + i. The buffer is cleared after every update.
struct RolloutBuffer {
    int n_agents = 0;
    int horizon = 0;
    std::vector<AgentObservation> observations;
    std::vector<uint8_t> actions;
    std::vector<double> log_probs;  // log pi_old(a|s)
    std::vector<double> values;     // V(s_t) under pi_old
    std::vector<double> reward_ind;
    std::vector<double> reward_team;
    std::vector<uint8_t> done;
    // V(s_T) per agent, the (T+1)-th value; empty means zeros. The trainer
    // always ends an epoch with done=1 so it never bootstraps past the end.
    std::vector<double> bootstrap_values;

    int rows() const { return n_agents * horizon; }
    int row(int t, int i) const { return t * n_agents + i; }
    void clear();
    double mean_team_reward() const;  // throws on empty buffer
};

struct LossReport {
    double l_clip = 0.0;
    double l_vf = 0.0;
    double l_ent = 0.0;
    double l_cv = 0.0;
    double l_tuc = 0.0;  // l_clip + delta*l_vf - rho*l_ent + eta*l_cv
    double mean_team_reward = 0.0;
    double w = 0.0;
};

struct TrainConfig {
    double r = 3.5;
    double gamma = 0.99;
    double lambda = 0.95;
    double eps_clip = 0.2;
    double value_coef = 0.5;    // delta
    double entropy_coef = 0.01; // rho
    int rollout_len = 1;
    // Gradient steps taken on each collected buffer. The clipped ratio is
    // only live from the second step on; 4 is the standard PPO setting and
    // reproduces the reported convergence speeds, where a single step runs
    // an order of magnitude slower.
    int inner_epochs = 4;
    // Pins w_t to a constant instead of the adaptive sigmoid (the vanilla
    // PPO engine pins 0).
    std::optional<double> weight_override;
};

// (1-w)*r_ind + w*r_team; w must lie in [0,1].
double composite_reward(double r_ind, double r_team, double w);

// sigmoid(cum_team / (cum_ind + 1e-8)), evaluated on the accumulators as
// they stand (the caller accumulates the current step first).
double adaptive_weight(const DualState& dual);

// max(0, tau - mean team reward over the whole buffer).
double constraint_violation(const RolloutBuffer& buffer, double tau_threshold);

// eta <- eta + zeta * violation (dual gradient ascent); violation must be
// non-negative, eta stays >= 0.
void dual_update(DualState& dual, double violation);

// GAE over composite rewards, per agent; done flags truncate the sum and
// zero the bootstrap.
std::vector<double> gae_advantages(const RolloutBuffer& buffer, double w, double gamma,
                                   double lambda);

// R_t = gamma * [composite_t + (1 - done_t) * R_{t+1}], backward, with
// R past the horizon = 0. Note the leading gamma also multiplies the
// immediate reward.
std::vector<double> returns_recursive(const RolloutBuffer& buffer, double w, double gamma);

// -mean_t min(ratio*A, clip(ratio, 1-eps, 1+eps)*A), ratio from the buffer's
// old log-probs and the supplied new ones.
double clip_loss(const RolloutBuffer& buffer, std::span<const double> advantages,
                 std::span<const double> new_log_probs, double eps_clip);

double value_loss(std::span<const double> values, std::span<const double> returns);

// mean row entropy, natural log, 0*log 0 = 0.
double entropy_bonus(std::span<const std::array<double, kActions>> action_probs);

// Full surrogate at the given params against a fixed buffer. Forward-only;
// the finite-difference oracle in the tests drives this.
LossReport tuc_loss(const PolicyParams& params, const RolloutBuffer& buffer,
                    std::span<const double> advantages, std::span<const double> returns,
                    double w, double eta, double violation, const TrainConfig& cfg);

// Same, also accumulating the analytic gradient. cached_traces, when given,
// must be forwards of the buffer observations under `params`.
LossReport tuc_loss_and_grad(const PolicyParams& params, const RolloutBuffer& buffer,
                             std::span<const double> advantages,
                             std::span<const double> returns, double w, double eta,
                             double violation, const TrainConfig& cfg, ParamBlock& grad,
                             const std::vector<ForwardTrace>* cached_traces = nullptr);

// Reusable per-epoch workspace.
struct EpochScratch {
    RolloutBuffer buffer;
    std::vector<ForwardTrace> traces;
    std::vector<double> advantages;
    std::vector<double> returns;
    ParamBlock grad{};
};

// One full epoch: rollout under the frozen snapshot, synchronous action
// application, rewards from the post-action grid, accumulator/w update,
// constraint violation, dual ascent (before the surrogate step), GAE,
// returns, and one Adam step per inner epoch. Clears the buffer.
LossReport train_epoch(StrategyGrid& grid, PolicyParams& params, AdamState& adam,
                       DualState& dual, Rng& rng, const TrainConfig& cfg,
                       int64_t iteration, EpochScratch* scratch = nullptr);

}  // namespace tuc
