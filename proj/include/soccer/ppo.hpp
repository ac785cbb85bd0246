#pragma once

#include <array>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/gae.hpp"
#include "soccer/network.hpp"

namespace soccer {

// Trajectories grouped per (env, blue-agent slot) sequence; flattened into a
// sample list once advantages are computed.
struct RolloutBuffer {
    struct Sequence {
        std::vector<ObservationBundle> obs;         // actor (noised) view
        std::vector<ObservationBundle> critic_obs;  // noise-free view
        std::vector<std::array<double, 5>> u;  // beta samples in (0,1)
        std::vector<double> log_prob;
        std::vector<double> value;
        std::vector<double> reward;
        std::vector<uint8_t> done;
        std::vector<uint8_t> bootstrap;  // time-limit terminations
        double trailing_value = 0.0;     // v_T for the horizon cut
    };

    std::vector<Sequence> sequences;

    struct SampleRef {
        int seq;
        int t;
    };
    std::vector<SampleRef> samples;
    std::vector<double> advantages;  // aligned with samples
    std::vector<double> returns;

    size_t size() const { return samples.size(); }
    void clear();

    // Runs GAE per sequence, flattens samples and normalizes advantages
    // batch-wide (mean 0, std 1).
    void finalize(double gamma, double lam);
};

// Adam with per-tensor moment state, laid out in the network's declared
// parameter order.
class Adam {
public:
    void init(ActorCritic& net);
    void step(ActorCritic& net, ActorCriticGrads& grads, double lr);

    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    int64_t t() const { return t_; }
    std::vector<Tensor>& moments_m() { return m_; }
    std::vector<Tensor>& moments_v() { return v_; }
    void set_t(int64_t t) { t_ = t; }

private:
    std::vector<Tensor> m_, v_;
    int64_t t_ = 0;
};

// Collects grad tensors in the same declared order as ActorCritic::visit.
std::vector<Tensor*> grad_tensors(ActorCriticGrads& grads);
std::vector<Tensor*> param_tensors(ActorCritic& net);

struct PpoMetrics {
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
    double approx_kl = 0.0;
    double clip_fraction = 0.0;
    bool aborted_nan = false;
};

// Clipped-surrogate PPO update with entropy bonus and value MSE, epochs x
// minibatches over the shuffled batch. A non-finite loss aborts the update
// and restores the previous parameters.
PpoMetrics ppo_update(ActorCritic& net, const RolloutBuffer& buffer,
                      const TrainerConfig& cfg, Adam& opt, Rng& rng);

}  // namespace soccer
