#include "tuc/trainer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tuc {

void RolloutBuffer::clear() {
    n_agents = 0;
    horizon = 0;
    observations.clear();
    actions.clear();
    log_probs.clear();
    values.clear();
    reward_ind.clear();
    reward_team.clear();
    done.clear();
    bootstrap_values.clear();
}

double RolloutBuffer::mean_team_reward() const {
    const int n = rows();
    if (n == 0) throw std::invalid_argument("empty rollout buffer");
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += reward_team[i];
    return sum / n;
}

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void check_buffer_consistency(const RolloutBuffer& b) {
    const size_t n = static_cast<size_t>(b.rows());
    if (b.n_agents <= 0 || b.horizon <= 0) {
        throw std::invalid_argument("rollout buffer has no rows");
    }
    if (b.observations.size() != n || b.actions.size() != n || b.log_probs.size() != n ||
        b.values.size() != n || b.reward_ind.size() != n || b.reward_team.size() != n ||
        b.done.size() != n) {
        throw std::invalid_argument("rollout buffer arrays have inconsistent lengths");
    }
    if (!b.bootstrap_values.empty() &&
        b.bootstrap_values.size() != static_cast<size_t>(b.n_agents)) {
        throw std::invalid_argument("bootstrap values must have one entry per agent");
    }
}

}  // namespace

double composite_reward(double r_ind, double r_team, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("composite weight must lie in [0,1], got " +
                                    std::to_string(w));
    }
    return (1.0 - w) * r_ind + w * r_team;
}

double adaptive_weight(const DualState& dual) {
    return sigmoid(dual.cum_team / (dual.cum_ind + 1e-8));
}

double constraint_violation(const RolloutBuffer& buffer, double tau_threshold) {
    const double shortfall = tau_threshold - buffer.mean_team_reward();
    return shortfall > 0.0 ? shortfall : 0.0;
}

void dual_update(DualState& dual, double violation) {
    if (!(violation >= 0.0)) {
        throw std::invalid_argument("constraint violation must be non-negative, got " +
                                    std::to_string(violation));
    }
    dual.eta += dual.zeta * violation;
    if (dual.eta < 0.0) dual.eta = 0.0;  // never active: violation is one-sided
}

std::vector<double> gae_advantages(const RolloutBuffer& buffer, double w, double gamma,
                                   double lambda) {
    check_buffer_consistency(buffer);
    if (!(gamma > 0.0 && gamma <= 1.0) || !(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("gamma must lie in (0,1] and lambda in [0,1]");
    }
    const int n = buffer.n_agents;
    const int horizon = buffer.horizon;
    std::vector<double> advantages(static_cast<size_t>(buffer.rows()));
    for (int i = 0; i < n; ++i) {
        double tail = 0.0;
        for (int t = horizon - 1; t >= 0; --t) {
            const int row = t * n + i;
            const bool terminal = buffer.done[row] != 0;
            double next_value = 0.0;
            if (!terminal) {
                next_value = (t + 1 < horizon)
                                 ? buffer.values[row + n]
                                 : (buffer.bootstrap_values.empty() ? 0.0
                                                                    : buffer.bootstrap_values[i]);
            }
            const double comp =
                composite_reward(buffer.reward_ind[row], buffer.reward_team[row], w);
            const double delta = comp + gamma * next_value - buffer.values[row];
            tail = delta + gamma * lambda * (terminal ? 0.0 : tail);
            advantages[row] = tail;
        }
    }
    return advantages;
}

std::vector<double> returns_recursive(const RolloutBuffer& buffer, double w, double gamma) {
    check_buffer_consistency(buffer);
    const int n = buffer.n_agents;
    const int horizon = buffer.horizon;
    std::vector<double> returns(static_cast<size_t>(buffer.rows()));
    for (int i = 0; i < n; ++i) {
        double tail = 0.0;  // R past the horizon
        for (int t = horizon - 1; t >= 0; --t) {
            const int row = t * n + i;
            const double comp =
                composite_reward(buffer.reward_ind[row], buffer.reward_team[row], w);
            tail = gamma * (comp + (buffer.done[row] != 0 ? 0.0 : tail));
            returns[row] = tail;
        }
    }
    return returns;
}

double clip_loss(const RolloutBuffer& buffer, std::span<const double> advantages,
                 std::span<const double> new_log_probs, double eps_clip) {
    check_buffer_consistency(buffer);
    if (!(eps_clip > 0.0)) throw std::invalid_argument("eps_clip must be positive");
    const size_t n = static_cast<size_t>(buffer.rows());
    if (advantages.size() != n || new_log_probs.size() != n) {
        throw std::invalid_argument("advantages/log-probs not aligned with buffer rows");
    }
    double acc = 0.0;
    for (size_t row = 0; row < n; ++row) {
        const double ratio = std::exp(new_log_probs[row] - buffer.log_probs[row]);
        const double lo = 1.0 - eps_clip, hi = 1.0 + eps_clip;
        const double clipped = ratio < lo ? lo : (ratio > hi ? hi : ratio);
        const double a = advantages[row];
        const double surr1 = ratio * a;
        const double surr2 = clipped * a;
        acc += surr1 < surr2 ? surr1 : surr2;
    }
    return -acc / static_cast<double>(n);
}

double value_loss(std::span<const double> values, std::span<const double> returns) {
    if (values.size() != returns.size() || values.empty()) {
        throw std::invalid_argument("values/returns must be non-empty and aligned");
    }
    double acc = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - returns[i];
        acc += d * d;
    }
    return acc / static_cast<double>(values.size());
}

double entropy_bonus(std::span<const std::array<double, kActions>> action_probs) {
    if (action_probs.empty()) throw std::invalid_argument("empty probability batch");
    double acc = 0.0;
    for (const auto& p : action_probs) {
        double h = 0.0;
        for (double pk : p)
            if (pk > 0.0) h -= pk * std::log(pk);
        acc += h;
    }
    return acc / static_cast<double>(action_probs.size());
}

namespace {

// Shared loss/gradient walk over the buffer rows. grad may be null
// (forward-only). The eta * violation term carries no parameter gradient:
// the violation is a statistic of collected rewards.
LossReport eval_losses(const PolicyParams& params, const RolloutBuffer& buffer,
                       std::span<const double> advantages, std::span<const double> returns,
                       double w, double eta, double violation, const TrainConfig& cfg,
                       ParamBlock* grad, const std::vector<ForwardTrace>* cached_traces) {
    check_buffer_consistency(buffer);
    const size_t n = static_cast<size_t>(buffer.rows());
    if (advantages.size() != n || returns.size() != n) {
        throw std::invalid_argument("advantages/returns not aligned with buffer rows");
    }
    if (cached_traces && cached_traces->size() != n) {
        throw std::invalid_argument("cached traces not aligned with buffer rows");
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const double lo = 1.0 - cfg.eps_clip, hi = 1.0 + cfg.eps_clip;

    double clip_acc = 0.0, vf_acc = 0.0, ent_acc = 0.0;
    ForwardTrace local;
    for (size_t row = 0; row < n; ++row) {
        const ForwardTrace* tr;
        if (cached_traces) {
            tr = &(*cached_traces)[row];
        } else {
            forward(params, buffer.observations[row], local);
            tr = &local;
        }
        const int a = buffer.actions[row];
        const double logp_new = action_log_prob(*tr, a);
        const double ratio = std::exp(logp_new - buffer.log_probs[row]);
        const double adv = advantages[row];
        const double clipped = ratio < lo ? lo : (ratio > hi ? hi : ratio);
        const double surr1 = ratio * adv;
        const double surr2 = clipped * adv;
        clip_acc += surr1 < surr2 ? surr1 : surr2;

        const double vdiff = tr->value - returns[row];
        vf_acc += vdiff * vdiff;

        const double p0 = tr->probs[0], p1 = tr->probs[1];
        const double lp0 = p0 > 0.0 ? std::log(p0) : 0.0;
        const double lp1 = p1 > 0.0 ? std::log(p1) : 0.0;
        const double h = -(p0 * lp0 + p1 * lp1);
        ent_acc += h;

        if (grad) {
            // d/dz of -(1/n) min(surr1, surr2): the unclipped branch (or a
            // tie, the common ratio==clipped case) differentiates through
            // ratio; a clipped minimum outside the band has zero gradient.
            double coef;
            if (surr1 <= surr2) {
                coef = ratio;
            } else {
                coef = (ratio > lo && ratio < hi) ? ratio : 0.0;
            }
            const double dlogp = -coef * adv * inv_n;
            std::array<double, kActions> dlogits;
            for (int k = 0; k < kActions; ++k) {
                const double pk = tr->probs[k];
                const double indicator = (k == a) ? 1.0 : 0.0;
                double d = dlogp * (indicator - pk);
                // -rho * L_ent contributes +rho/n * p_k (log p_k + H)
                if (pk > 0.0) d += cfg.entropy_coef * inv_n * pk * (std::log(pk) + h);
                dlogits[k] = d;
            }
            const double dvalue = 2.0 * cfg.value_coef * inv_n * vdiff;
            backward(params, *tr, dlogits, dvalue, *grad);
        }
    }

    LossReport report;
    report.l_clip = -clip_acc * inv_n;
    report.l_vf = vf_acc * inv_n;
    report.l_ent = ent_acc * inv_n;
    report.l_cv = violation;
    report.l_tuc = report.l_clip + cfg.value_coef * report.l_vf -
                   cfg.entropy_coef * report.l_ent + eta * report.l_cv;
    report.mean_team_reward = buffer.mean_team_reward();
    report.w = w;
    return report;
}

}  // namespace

LossReport tuc_loss(const PolicyParams& params, const RolloutBuffer& buffer,
                    std::span<const double> advantages, std::span<const double> returns,
                    double w, double eta, double violation, const TrainConfig& cfg) {
    return eval_losses(params, buffer, advantages, returns, w, eta, violation, cfg, nullptr,
                       nullptr);
}

LossReport tuc_loss_and_grad(const PolicyParams& params, const RolloutBuffer& buffer,
                             std::span<const double> advantages,
                             std::span<const double> returns, double w, double eta,
                             double violation, const TrainConfig& cfg, ParamBlock& grad,
                             const std::vector<ForwardTrace>* cached_traces) {
    return eval_losses(params, buffer, advantages, returns, w, eta, violation, cfg, &grad,
                       cached_traces);
}

LossReport train_epoch(StrategyGrid& grid, PolicyParams& params, AdamState& adam,
                       DualState& dual, Rng& rng, const TrainConfig& cfg, int64_t iteration,
                       EpochScratch* scratch) {
    if (cfg.rollout_len < 1) throw std::invalid_argument("rollout_len must be >= 1");
    if (cfg.inner_epochs < 1) throw std::invalid_argument("inner_epochs must be >= 1");
    if (cfg.weight_override && !(*cfg.weight_override >= 0.0 && *cfg.weight_override <= 1.0)) {
        throw std::invalid_argument("weight override must lie in [0,1]");
    }

    EpochScratch local;
    EpochScratch& ws = scratch ? *scratch : local;
    RolloutBuffer& buffer = ws.buffer;
    buffer.clear();

    const int n = grid.cell_count();
    const int horizon = cfg.rollout_len;
    const int total_rows = n * horizon;
    buffer.n_agents = n;
    buffer.horizon = horizon;
    buffer.observations.resize(total_rows);
    buffer.actions.resize(total_rows);
    buffer.log_probs.resize(total_rows);
    buffer.values.resize(total_rows);
    buffer.reward_ind.resize(total_rows);
    buffer.reward_team.resize(total_rows);
    buffer.done.resize(total_rows);
    ws.traces.resize(total_rows);

    for (int step = 0; step < horizon; ++step) {
        const auto obs = encode_observations(grid);  // frozen snapshot
        const int base = step * n;
        for (int i = 0; i < n; ++i) {
            ForwardTrace& tr = ws.traces[base + i];
            forward(params, obs[i], tr);
            const int action = rng.uniform() < tr.probs[0] ? 0 : 1;
            buffer.observations[base + i] = obs[i];
            buffer.actions[base + i] = static_cast<uint8_t>(action);
            buffer.log_probs[base + i] = action_log_prob(tr, action);
            buffer.values[base + i] = tr.value;
        }
        // synchronous joint action: every cell takes its sampled strategy
        for (int i = 0; i < n; ++i) {
            grid.set_index(i, static_cast<Strategy>(buffer.actions[base + i]));
        }
        // rewards are the consequence of the realized strategy profile
        const auto payoffs = total_payoffs(grid, cfg.r);
        for (int i = 0; i < n; ++i) {
            buffer.reward_ind[base + i] = payoffs[i];
            buffer.reward_team[base + i] = team_reward(grid, i, cfg.r);
        }
        const uint8_t terminal = step == horizon - 1 ? 1 : 0;
        for (int i = 0; i < n; ++i) buffer.done[base + i] = terminal;
    }

    double sum_team = 0.0, sum_ind = 0.0;
    for (int row = 0; row < total_rows; ++row) {
        sum_team += buffer.reward_team[row];
        sum_ind += buffer.reward_ind[row];
    }
    dual.cum_team += sum_team;
    dual.cum_ind += sum_ind;
    const double w = cfg.weight_override ? *cfg.weight_override : adaptive_weight(dual);

    const double violation = constraint_violation(buffer, dual.tau_threshold);
    dual_update(dual, violation);  // dual ascent precedes the surrogate step

    ws.advantages = gae_advantages(buffer, w, cfg.gamma, cfg.lambda);
    ws.returns = returns_recursive(buffer, w, cfg.gamma);

    LossReport report;
    const double lr = effective_lr(adam, iteration);
    for (int inner = 0; inner < cfg.inner_epochs; ++inner) {
        ws.grad.fill(0.0);
        // inner epoch 0 runs under the rollout parameters, so the rollout
        // traces are still exact
        const LossReport inner_report =
            tuc_loss_and_grad(params, buffer, ws.advantages, ws.returns, w, dual.eta,
                              violation, cfg, ws.grad, inner == 0 ? &ws.traces : nullptr);
        adam_step(params, ws.grad, adam, lr);
        if (inner == 0) report = inner_report;
    }

    buffer.clear();
    return report;
}

}  // namespace tuc
