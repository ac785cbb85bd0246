#include "soccer/trainer.hpp"

#include <algorithm>
#include <sstream>

#include "soccer/checkpoint.hpp"
#include "soccer/rewards.hpp"

namespace soccer {

namespace {

int max_blue_slots(const TrainerConfig& cfg) {
    int m = 1;
    for (const auto& [nb, nr] : cfg.team_sizes) m = std::max(m, nb);
    return m;
}

}  // namespace

Trainer::Trainer(const PipelineConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      reward_(cfg.reward),
      net_(ActorCritic::make(cfg.net, cfg.obs)),
      pool_(cfg.trainer.selfplay_buffer_size),
      tracker_(cfg.trainer.winrate_window) {
    Rng init_rng(seed);
    net_.init(init_rng);
    opt_.init(net_);
    update_rng_.seed(seed ^ 0x5bd1e9955bd1e995ull);
    envs_.resize(cfg.trainer.num_envs);
    env_started_.assign(cfg.trainer.num_envs, 0);
    env_adversary_.resize(cfg.trainer.num_envs);
    for (int e = 0; e < cfg.trainer.num_envs; ++e) {
        envs_[e].rng.seed(seed + 0x9e3779b97f4a7c15ull * (e + 1));
        envs_[e].world.rng_stream = static_cast<uint64_t>(e);
    }
}

std::vector<int> Trainer::adversary_ids() const {
    std::vector<int> ids;
    if (cfg_.trainer.include_bot_adversary || pool_.size() == 0)
        ids.push_back(kBotAdversaryId);
    for (int id : pool_.ids()) ids.push_back(id);
    return ids;
}

void Trainer::reset_env_episode(EnvInstance& env) {
    const TrainerConfig& tc = cfg_.trainer;
    int pick = env.rng.uniform_int(0, static_cast<int>(tc.team_sizes.size()) - 1);
    SpawnSpec spec;
    spec.n_blue = tc.team_sizes[pick].first;
    spec.n_red = tc.team_sizes[pick].second;
    spec.field_scale = field_scale_for_level(env.curriculum.field_level,
                                             tc.field_levels - 1,
                                             tc.field_min_scale);
    spec.ball_band_lo = 0.0;
    spec.ball_band_hi = ball_band_far_edge(env.curriculum.init_pos_level,
                                           tc.init_pos_levels - 1,
                                           tc.init_pos_min_frac);
    env.adversary_id =
        sample_adversary(pool_, tc.include_bot_adversary, env.rng);
    size_t idx = &env - envs_.data();
    env_adversary_[idx] = pool_.find_shared(env.adversary_id);
    reset_episode(env, spec, cfg_.field, cfg_.obs);
}

void Trainer::ensure_env_initialized(int e) {
    if (env_started_[e]) return;
    reset_env_episode(envs_[e]);
    env_started_[e] = 1;
}

void Trainer::collect(RolloutBuffer& buffer, int* episodes, int* wins) {
    const TrainerConfig& tc = cfg_.trainer;
    const int slots = max_blue_slots(tc);
    buffer.clear();
    buffer.sequences.resize(static_cast<size_t>(tc.num_envs) * slots);

    for (int e = 0; e < tc.num_envs; ++e) {
        ensure_env_initialized(e);
        EnvInstance& env = envs_[e];
        for (int t = 0; t < tc.horizon; ++t) {
            std::vector<ActionCommand> actions;
            int n_blue = env.n_blue;
            for (int b = 0; b < n_blue; ++b) {
                RolloutBuffer::Sequence& seq =
                    buffer.sequences[static_cast<size_t>(e) * slots + b];
                ObservationBundle actor_obs = build_observation(
                    env.world, b, env.history, cfg_.obs, ObsRole::Actor, env.rng);
                ObservationBundle critic_obs = build_observation(
                    env.world, b, env.history, cfg_.obs, ObsRole::Critic, env.rng);
                ActionDist dist = policy_forward(actor_obs, net_, nullptr);
                SampledAction act = sample_action(dist, env.rng);
                double value = value_forward(critic_obs, net_, nullptr);
                actions.push_back(ActionCommand::from_array(act.action));
                seq.obs.push_back(std::move(actor_obs));
                seq.critic_obs.push_back(std::move(critic_obs));
                seq.u.push_back(act.u);
                seq.log_prob.push_back(act.log_prob);
                seq.value.push_back(value);
            }
            std::vector<ActionCommand> red =
                adversary_actions(env, env_adversary_[e].get(), cfg_.obs);
            actions.insert(actions.end(), red.begin(), red.end());

            push_history(env);
            StepEvents events = step_world(env.world, actions, cfg_.sim);
            OwnershipState ownership = assign_ownership(env.world);
            std::vector<double> rewards =
                compute_rewards(env.world, events, ownership, reward_);
            env.tracker.update(env.world, events, ownership, cfg_.sim.dt);
            std::optional<Outcome> outcome =
                check_termination(env.world, cfg_.sim);

            for (int b = 0; b < n_blue; ++b) {
                RolloutBuffer::Sequence& seq =
                    buffer.sequences[static_cast<size_t>(e) * slots + b];
                seq.reward.push_back(rewards[b]);
                seq.done.push_back(outcome ? 1 : 0);
                seq.bootstrap.push_back(outcome == Outcome::Timeout ? 1 : 0);
            }

            if (outcome) {
                env.tracker.finish(*outcome);
                tracker_.record(env.adversary_id, *outcome == Outcome::BlueWin);
                ++*episodes;
                if (*outcome == Outcome::BlueWin) ++*wins;
                update_levels(env.curriculum, *outcome, Team::Blue,
                              tc.init_pos_levels - 1, tc.field_levels - 1);
                reset_env_episode(env);
            }
        }
        // Bootstrap values at the horizon cut for the currently active slots.
        for (int b = 0; b < env.n_blue; ++b) {
            RolloutBuffer::Sequence& seq =
                buffer.sequences[static_cast<size_t>(e) * slots + b];
            ObservationBundle critic_obs = build_observation(
                env.world, b, env.history, cfg_.obs, ObsRole::Critic, env.rng);
            seq.trailing_value = value_forward(critic_obs, net_, nullptr);
        }
    }
}

void Trainer::maybe_promote(IterationMetrics& m) {
    const TrainerConfig& tc = cfg_.trainer;
    std::vector<int> ids = adversary_ids();
    m.winrate_avg = tracker_.average_over(ids);
    if (!tracker_.all_have_at_least(ids, tc.min_episodes_per_adversary)) return;
    if (m.winrate_avg < tc.promote_winrate) return;

    if (!dense_milestone_hit_) {
        dense_milestone_hit_ = true;
        dense_gate(true, reward_);
    }
    int evicted = -1;
    pool_.add(net_, &evicted);
    if (evicted >= 0) tracker_.forget(evicted);
    m.promoted = true;
}

IterationMetrics Trainer::iterate() {
    IterationMetrics m;
    m.iteration = ++iteration_;

    RolloutBuffer buffer;
    int episodes = 0, wins = 0;
    collect(buffer, &episodes, &wins);
    buffer.finalize(cfg_.trainer.gamma, cfg_.trainer.lam);
    m.samples = buffer.size();
    m.episodes_finished = episodes;
    m.ppo = ppo_update(net_, buffer, cfg_.trainer, opt_, update_rng_);

    maybe_promote(m);

    double init_sum = 0.0, field_sum = 0.0;
    for (const auto& env : envs_) {
        init_sum += env.curriculum.init_pos_level;
        field_sum += env.curriculum.field_level;
    }
    m.mean_init_level = init_sum / envs_.size();
    m.mean_field_level = field_sum / envs_.size();
    m.dense_active = reward_.dense_active;
    m.pool_size = static_cast<int>(pool_.size());
    return m;
}

std::string Trainer::metrics_csv_header() {
    return "iteration,samples,policy_loss,value_loss,entropy,approx_kl,"
           "clip_fraction,episodes,winrate_avg,mean_init_level,"
           "mean_field_level,dense_active,pool_size,promoted";
}

std::string Trainer::metrics_csv_row(const IterationMetrics& m) {
    std::ostringstream os;
    os << m.iteration << ',' << m.samples << ',' << m.ppo.policy_loss << ','
       << m.ppo.value_loss << ',' << m.ppo.entropy << ',' << m.ppo.approx_kl
       << ',' << m.ppo.clip_fraction << ',' << m.episodes_finished << ','
       << m.winrate_avg << ',' << m.mean_init_level << ',' << m.mean_field_level
       << ',' << (m.dense_active ? 1 : 0) << ',' << m.pool_size << ','
       << (m.promoted ? 1 : 0);
    return os.str();
}

void Trainer::save(const std::string& path) const {
    save_trainer_checkpoint(path, *this);
}

void Trainer::load(const std::string& path) {
    load_trainer_checkpoint(path, *this);
}

}  // namespace soccer
