#include "soccer/network.hpp"

#include <cmath>
#include <cstring>

namespace soccer {

void encode_entities(const std::vector<double>& local,
                     const std::vector<double>& entities,
                     const std::vector<uint8_t>& mask, int entity_dim,
                     const Mlp& encoder, EncodeCache& cache) {
    const int out_dim = encoder.output_dim();
    cache.row_caches.clear();
    cache.row_ids.clear();
    cache.argmax.assign(out_dim, -1);
    cache.pooled.assign(out_dim, 0.0);

    std::vector<double> input(encoder.input_dim());
    std::vector<double> out(out_dim);
    for (size_t r = 0; r < mask.size(); ++r) {
        if (!mask[r]) continue;
        std::memcpy(input.data(), entities.data() + r * entity_dim,
                    entity_dim * sizeof(double));
        std::memcpy(input.data() + entity_dim, local.data(),
                    local.size() * sizeof(double));
        cache.row_caches.emplace_back();
        encoder.forward(input.data(), out.data(), &cache.row_caches.back());
        int slot = static_cast<int>(cache.row_caches.size()) - 1;
        cache.row_ids.push_back(static_cast<int>(r));
        if (slot == 0) {
            cache.pooled = out;
            std::fill(cache.argmax.begin(), cache.argmax.end(), 0);
        } else {
            for (int d = 0; d < out_dim; ++d) {
                if (out[d] > cache.pooled[d]) {  // ties keep the lowest row
                    cache.pooled[d] = out[d];
                    cache.argmax[d] = slot;
                }
            }
        }
    }
    // No valid rows: pooled stays the zero sentinel, argmax -1.
}

void encode_entities_backward(const EncodeCache& cache, const double* d_pooled,
                              const Mlp& encoder, Mlp::Grads& grads) {
    if (cache.row_caches.empty()) return;
    const int out_dim = encoder.output_dim();
    std::vector<std::vector<double>> d_rows(cache.row_caches.size());
    for (int d = 0; d < out_dim; ++d) {
        if (d_pooled[d] == 0.0) continue;
        int slot = cache.argmax[d];
        if (d_rows[slot].empty()) d_rows[slot].assign(out_dim, 0.0);
        d_rows[slot][d] += d_pooled[d];
    }
    for (size_t s = 0; s < d_rows.size(); ++s) {
        if (d_rows[s].empty()) continue;
        encoder.backward(cache.row_caches[s], d_rows[s].data(), grads, nullptr);
    }
}

ActorCritic ActorCritic::make(const NetworkConfig& net,
                              const ObservationConfig& obs) {
    auto enc_sizes = [&] {
        std::vector<int> s{obs.entity_dim() + obs.local_dim()};
        s.insert(s.end(), net.encoder_hidden.begin(), net.encoder_hidden.end());
        s.push_back(net.encoder_out);
        return s;
    };
    auto trunk_sizes = [&](int out) {
        std::vector<int> s{obs.local_dim() + 2 * net.encoder_out};
        s.insert(s.end(), net.policy_hidden.begin(), net.policy_hidden.end());
        s.push_back(out);
        return s;
    };
    ActorCritic ac;
    ac.action_dim = net.action_dim;
    ac.actor_team_enc = Mlp(enc_sizes());
    ac.actor_opp_enc = Mlp(enc_sizes());
    ac.policy = Mlp(trunk_sizes(2 * net.action_dim));
    ac.critic_team_enc = Mlp(enc_sizes());
    ac.critic_opp_enc = Mlp(enc_sizes());
    ac.value = Mlp(trunk_sizes(1));
    return ac;
}

void ActorCritic::init(Rng& rng) {
    double g = std::sqrt(2.0);
    actor_team_enc.init(rng, g, g);
    actor_opp_enc.init(rng, g, g);
    policy.init(rng, g, 0.01);
    critic_team_enc.init(rng, g, g);
    critic_opp_enc.init(rng, g, g);
    value.init(rng, g, 1.0);
}

void ActorCritic::visit(
    const std::function<void(const std::string&, Tensor&)>& fn) {
    actor_team_enc.visit(fn, "actor_team_enc");
    actor_opp_enc.visit(fn, "actor_opp_enc");
    policy.visit(fn, "policy");
    critic_team_enc.visit(fn, "critic_team_enc");
    critic_opp_enc.visit(fn, "critic_opp_enc");
    value.visit(fn, "value");
}

size_t ActorCritic::n_params() {
    size_t n = 0;
    visit([&](const std::string&, Tensor& t) { n += t.size(); });
    return n;
}

bool ActorCritic::finite() const {
    bool ok = true;
    const_cast<ActorCritic*>(this)->visit([&](const std::string&, Tensor& t) {
        for (double v : t.data)
            if (!std::isfinite(v)) ok = false;
    });
    return ok;
}

ActorCriticGrads ActorCriticGrads::make(const ActorCritic& net) {
    ActorCriticGrads g;
    g.actor_team_enc = net.actor_team_enc.make_grads();
    g.actor_opp_enc = net.actor_opp_enc.make_grads();
    g.policy = net.policy.make_grads();
    g.critic_team_enc = net.critic_team_enc.make_grads();
    g.critic_opp_enc = net.critic_opp_enc.make_grads();
    g.value = net.value.make_grads();
    return g;
}

void ActorCriticGrads::zero() {
    actor_team_enc.zero();
    actor_opp_enc.zero();
    policy.zero();
    critic_team_enc.zero();
    critic_opp_enc.zero();
    value.zero();
}

void ActorCriticGrads::scale(double s) {
    auto sc = [s](Mlp::Grads& g) {
        for (auto& t : g.w)
            for (double& v : t.data) v *= s;
        for (auto& t : g.b)
            for (double& v : t.data) v *= s;
    };
    sc(actor_team_enc);
    sc(actor_opp_enc);
    sc(policy);
    sc(critic_team_enc);
    sc(critic_opp_enc);
    sc(value);
}

namespace {

void build_trunk_input(const std::vector<double>& local,
                       const std::vector<double>& pooled_t,
                       const std::vector<double>& pooled_o,
                       std::vector<double>& out) {
    out.clear();
    out.insert(out.end(), local.begin(), local.end());
    out.insert(out.end(), pooled_t.begin(), pooled_t.end());
    out.insert(out.end(), pooled_o.begin(), pooled_o.end());
}

}  // namespace

ActionDist policy_forward(const ObservationBundle& obs, const ActorCritic& net,
                          PolicyCache* cache) {
    PolicyCache local_cache;
    PolicyCache& c = cache ? *cache : local_cache;
    const int ed = static_cast<int>(obs.teammates.size() / obs.teammate_mask.size());

    encode_entities(obs.local, obs.teammates, obs.teammate_mask, ed,
                    net.actor_team_enc, c.team);
    encode_entities(obs.local, obs.opponents, obs.opponent_mask, ed,
                    net.actor_opp_enc, c.opp);
    build_trunk_input(obs.local, c.team.pooled, c.opp.pooled, c.trunk_in);

    c.raw.assign(2 * net.action_dim, 0.0);
    net.policy.forward(c.trunk_in.data(), c.raw.data(),
                       cache ? &c.trunk : nullptr);

    ActionDist dist;
    for (int k = 0; k < net.action_dim; ++k) {
        dist.dims[k].alpha = 1.0 + softplus(c.raw[2 * k]);
        dist.dims[k].beta = 1.0 + softplus(c.raw[2 * k + 1]);
    }
    return dist;
}

void policy_backward(const PolicyCache& cache, const ActorCritic& net,
                     const std::array<std::array<double, 2>, 5>& d_alpha_beta,
                     ActorCriticGrads& grads) {
    std::vector<double> d_raw(2 * net.action_dim);
    for (int k = 0; k < net.action_dim; ++k) {
        d_raw[2 * k] = d_alpha_beta[k][0] * sigmoid(cache.raw[2 * k]);
        d_raw[2 * k + 1] = d_alpha_beta[k][1] * sigmoid(cache.raw[2 * k + 1]);
    }
    std::vector<double> d_in(net.policy.input_dim(), 0.0);
    net.policy.backward(cache.trunk, d_raw.data(), grads.policy, d_in.data());

    int local_dim = net.policy.input_dim() - net.actor_team_enc.output_dim() -
                    net.actor_opp_enc.output_dim();
    encode_entities_backward(cache.team, d_in.data() + local_dim,
                             net.actor_team_enc, grads.actor_team_enc);
    encode_entities_backward(
        cache.opp, d_in.data() + local_dim + net.actor_team_enc.output_dim(),
        net.actor_opp_enc, grads.actor_opp_enc);
}

double value_forward(const ObservationBundle& obs, const ActorCritic& net,
                     ValueCache* cache) {
    ValueCache local_cache;
    ValueCache& c = cache ? *cache : local_cache;
    const int ed = static_cast<int>(obs.teammates.size() / obs.teammate_mask.size());

    encode_entities(obs.local, obs.teammates, obs.teammate_mask, ed,
                    net.critic_team_enc, c.team);
    encode_entities(obs.local, obs.opponents, obs.opponent_mask, ed,
                    net.critic_opp_enc, c.opp);
    build_trunk_input(obs.local, c.team.pooled, c.opp.pooled, c.trunk_in);

    double v = 0.0;
    net.value.forward(c.trunk_in.data(), &v, cache ? &c.trunk : nullptr);
    return v;
}

void value_backward(const ValueCache& cache, const ActorCritic& net,
                    double d_value, ActorCriticGrads& grads) {
    std::vector<double> d_in(net.value.input_dim(), 0.0);
    net.value.backward(cache.trunk, &d_value, grads.value, d_in.data());
    int local_dim = net.value.input_dim() - net.critic_team_enc.output_dim() -
                    net.critic_opp_enc.output_dim();
    encode_entities_backward(cache.team, d_in.data() + local_dim,
                             net.critic_team_enc, grads.critic_team_enc);
    encode_entities_backward(
        cache.opp, d_in.data() + local_dim + net.critic_team_enc.output_dim(),
        net.critic_opp_enc, grads.critic_opp_enc);
}

SampledAction sample_action(const ActionDist& dist, Rng& rng) {
    SampledAction s{};
    s.log_prob = 0.0;
    for (int k = 0; k < 5; ++k) {
        s.u[k] = dist.dims[k].sample(rng);
        s.action[k] = action_from_u(s.u[k]);
        s.log_prob += action_log_prob(dist.dims[k], s.u[k]);
    }
    return s;
}

SampledAction mode_action(const ActionDist& dist) {
    SampledAction s{};
    s.log_prob = 0.0;
    for (int k = 0; k < 5; ++k) {
        s.u[k] = dist.dims[k].mode();
        s.action[k] = action_from_u(s.u[k]);
        s.log_prob += action_log_prob(dist.dims[k], s.u[k]);
    }
    return s;
}

double action_log_prob_sum(const ActionDist& dist,
                           const std::array<double, 5>& u) {
    double lp = 0.0;
    for (int k = 0; k < 5; ++k) lp += action_log_prob(dist.dims[k], u[k]);
    return lp;
}

double action_entropy_sum(const ActionDist& dist) {
    double h = 0.0;
    for (int k = 0; k < 5; ++k) h += action_entropy(dist.dims[k]);
    return h;
}

}  // namespace soccer
