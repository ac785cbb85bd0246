#include "soccer/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "soccer/kernels.hpp"

namespace soccer {

void RolloutBuffer::clear() {
    sequences.clear();
    samples.clear();
    advantages.clear();
    returns.clear();
}

void RolloutBuffer::finalize(double gamma, double lam) {
    samples.clear();
    advantages.clear();
    returns.clear();
    for (size_t s = 0; s < sequences.size(); ++s) {
        Sequence& seq = sequences[s];
        if (seq.reward.empty()) continue;
        std::vector<double> values = seq.value;
        values.push_back(seq.trailing_value);
        GaeResult g = compute_gae(seq.reward, values, seq.done, seq.bootstrap,
                                  gamma, lam);
        for (size_t t = 0; t < seq.reward.size(); ++t) {
            samples.push_back({static_cast<int>(s), static_cast<int>(t)});
            advantages.push_back(g.advantages[t]);
            returns.push_back(g.returns[t]);
        }
    }
    normalize_advantages(advantages);
}

void Adam::init(ActorCritic& net) {
    m_.clear();
    v_.clear();
    t_ = 0;
    for (Tensor* p : param_tensors(net)) {
        m_.emplace_back(p->rows, p->cols);
        v_.emplace_back(p->rows, p->cols);
    }
}

void Adam::step(ActorCritic& net, ActorCriticGrads& grads, double lr) {
    ++t_;
    double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    std::vector<Tensor*> params = param_tensors(net);
    std::vector<Tensor*> gs = grad_tensors(grads);
    const kern::Ops& k = kern::ops();
    for (size_t i = 0; i < params.size(); ++i) {
        k.adam_step(params[i]->ptr(), m_[i].ptr(), v_[i].ptr(), gs[i]->ptr(),
                    params[i]->size(), lr, beta1, beta2, eps, bc1, bc2);
    }
}

std::vector<Tensor*> param_tensors(ActorCritic& net) {
    std::vector<Tensor*> out;
    net.visit([&](const std::string&, Tensor& t) { out.push_back(&t); });
    return out;
}

std::vector<Tensor*> grad_tensors(ActorCriticGrads& grads) {
    std::vector<Tensor*> out;
    auto add = [&](Mlp::Grads& g) {
        for (size_t l = 0; l < g.w.size(); ++l) {
            out.push_back(&g.w[l]);
            out.push_back(&g.b[l]);
        }
    };
    add(grads.actor_team_enc);
    add(grads.actor_opp_enc);
    add(grads.policy);
    add(grads.critic_team_enc);
    add(grads.critic_opp_enc);
    add(grads.value);
    return out;
}

namespace {

std::vector<double> snapshot_params(ActorCritic& net) {
    std::vector<double> out;
    for (Tensor* t : param_tensors(net))
        out.insert(out.end(), t->data.begin(), t->data.end());
    return out;
}

void restore_params(ActorCritic& net, const std::vector<double>& flat) {
    size_t off = 0;
    for (Tensor* t : param_tensors(net)) {
        std::copy(flat.begin() + off, flat.begin() + off + t->size(),
                  t->data.begin());
        off += t->size();
    }
}

}  // namespace

PpoMetrics ppo_update(ActorCritic& net, const RolloutBuffer& buffer,
                      const TrainerConfig& cfg, Adam& opt, Rng& rng) {
    PpoMetrics metrics;
    const size_t n = buffer.size();
    if (n == 0) return metrics;

    std::vector<double> backup = snapshot_params(net);
    ActorCriticGrads grads = ActorCriticGrads::make(net);
    PolicyCache pcache;
    ValueCache vcache;

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    size_t mb_size = (n + cfg.minibatches - 1) / cfg.minibatches;

    size_t stat_count = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng.engine());
        for (size_t start = 0; start < n; start += mb_size) {
            size_t end = std::min(start + mb_size, n);
            grads.zero();
            for (size_t idx = start; idx < end; ++idx) {
                size_t i = order[idx];
                const auto& ref = buffer.samples[i];
                const auto& seq = buffer.sequences[ref.seq];
                const ObservationBundle& obs = seq.obs[ref.t];
                double adv = buffer.advantages[i];
                double ret = buffer.returns[i];
                double logp_old = seq.log_prob[ref.t];

                ActionDist dist = policy_forward(obs, net, &pcache);
                double logp_new = action_log_prob_sum(dist, seq.u[ref.t]);
                double ratio = std::exp(logp_new - logp_old);
                double clipped =
                    std::clamp(ratio, 1.0 - cfg.clip_ratio, 1.0 + cfg.clip_ratio);
                double s1 = ratio * adv;
                double s2 = clipped * adv;
                double pg_loss = -std::min(s1, s2);
                double d_logp = (s1 <= s2) ? -adv * ratio : 0.0;

                double entropy = action_entropy_sum(dist);
                double v = value_forward(seq.critic_obs[ref.t], net, &vcache);
                double v_err = v - ret;
                double loss = pg_loss - cfg.entropy_coef * entropy +
                              0.5 * cfg.value_coef * v_err * v_err;
                if (!std::isfinite(loss)) {
                    restore_params(net, backup);
                    metrics.aborted_nan = true;
                    return metrics;
                }

                std::array<std::array<double, 2>, 5> d_ab{};
                for (int k = 0; k < 5; ++k) {
                    auto glp = dist.dims[k].log_prob_grad(seq.u[ref.t][k]);
                    auto gh = dist.dims[k].entropy_grad();
                    d_ab[k][0] = d_logp * glp[0] - cfg.entropy_coef * gh[0];
                    d_ab[k][1] = d_logp * glp[1] - cfg.entropy_coef * gh[1];
                }
                policy_backward(pcache, net, d_ab, grads);
                value_backward(vcache, net, cfg.value_coef * v_err, grads);

                metrics.policy_loss += pg_loss;
                metrics.value_loss += 0.5 * v_err * v_err;
                metrics.entropy += entropy;
                metrics.approx_kl += logp_old - logp_new;
                metrics.clip_fraction +=
                    std::abs(ratio - 1.0) > cfg.clip_ratio ? 1.0 : 0.0;
                ++stat_count;
            }
            grads.scale(1.0 / static_cast<double>(end - start));
            opt.step(net, grads, cfg.learning_rate);
        }
    }

    if (!net.finite()) {
        restore_params(net, backup);
        metrics.aborted_nan = true;
        return metrics;
    }

    double inv = 1.0 / static_cast<double>(std::max<size_t>(stat_count, 1));
    metrics.policy_loss *= inv;
    metrics.value_loss *= inv;
    metrics.entropy *= inv;
    metrics.approx_kl *= inv;
    metrics.clip_fraction *= inv;
    return metrics;
}

}  // namespace soccer
