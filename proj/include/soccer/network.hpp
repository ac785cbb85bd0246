#pragma once

#include <array>
#include <functional>
#include <vector>

#include "soccer/beta.hpp"
#include "soccer/config.hpp"
#include "soccer/mlp.hpp"
#include "soccer/observation.hpp"

namespace soccer {

// Pooled entity feature: shared per-entity MLP over [entity row, local obs],
// element-wise max over valid rows. An empty set pools to the zero vector.
struct EncodeCache {
    std::vector<Mlp::Cache> row_caches;  // per valid row, in row order
    std::vector<int> row_ids;            // original row indices of valid rows
    std::vector<int> argmax;             // per feature dim, index into row_caches
    std::vector<double> pooled;
};

void encode_entities(const std::vector<double>& local,
                     const std::vector<double>& entities,
                     const std::vector<uint8_t>& mask, int entity_dim,
                     const Mlp& encoder, EncodeCache& cache);

// Gradient of the pooled feature routed to the argmax rows only (ties were
// broken to the lowest row index during pooling).
void encode_entities_backward(const EncodeCache& cache, const double* d_pooled,
                              const Mlp& encoder, Mlp::Grads& grads);

struct ActionDist {
    std::array<BetaDist, 5> dims;
};

// Actor and critic parameter set. Teammate and opponent streams have separate
// encoder weights; the critic owns its own encoders and trunk.
struct ActorCritic {
    Mlp actor_team_enc, actor_opp_enc, policy;  // policy outputs 2 * action_dim
    Mlp critic_team_enc, critic_opp_enc, value; // value outputs 1

    int action_dim = 5;

    static ActorCritic make(const NetworkConfig& net, const ObservationConfig& obs);
    void init(Rng& rng);

    // Visits every parameter tensor in a fixed declared order (checkpoint and
    // optimizer layout).
    void visit(const std::function<void(const std::string&, Tensor&)>& fn);
    size_t n_params();

    bool finite() const;
};

struct PolicyCache {
    EncodeCache team, opp;
    Mlp::Cache trunk;
    std::vector<double> trunk_in;
    std::vector<double> raw;  // 2 * action_dim pre-softplus outputs
};

struct ValueCache {
    EncodeCache team, opp;
    Mlp::Cache trunk;
    std::vector<double> trunk_in;
};

struct ActorCriticGrads {
    Mlp::Grads actor_team_enc, actor_opp_enc, policy;
    Mlp::Grads critic_team_enc, critic_opp_enc, value;
    static ActorCriticGrads make(const ActorCritic& net);
    void zero();
    void scale(double s);
};

ActionDist policy_forward(const ObservationBundle& obs, const ActorCritic& net,
                          PolicyCache* cache);

// d(loss)/d(alpha_k, beta_k) -> parameter gradients through the softplus
// heads, trunk and encoders.
void policy_backward(const PolicyCache& cache, const ActorCritic& net,
                     const std::array<std::array<double, 2>, 5>& d_alpha_beta,
                     ActorCriticGrads& grads);

double value_forward(const ObservationBundle& obs, const ActorCritic& net,
                     ValueCache* cache);

void value_backward(const ValueCache& cache, const ActorCritic& net,
                    double d_value, ActorCriticGrads& grads);

struct SampledAction {
    std::array<double, 5> u;       // raw beta samples in (0,1)
    std::array<double, 5> action;  // mapped to (-1,1)
    double log_prob;               // joint log density over (-1,1)^5
};

SampledAction sample_action(const ActionDist& dist, Rng& rng);
SampledAction mode_action(const ActionDist& dist);  // deterministic evaluation

double action_log_prob_sum(const ActionDist& dist, const std::array<double, 5>& u);
double action_entropy_sum(const ActionDist& dist);

}  // namespace soccer
