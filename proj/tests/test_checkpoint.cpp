#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "soccer/checkpoint.hpp"
#include "soccer/trainer.hpp"

using namespace soccer;

namespace {

std::string temp_path(const char* name) {
    return std::string("/tmp/soccer_test_") + name;
}

PipelineConfig small_cfg() {
    PipelineConfig cfg;
    cfg.net.encoder_hidden = {6};
    cfg.net.encoder_out = 4;
    cfg.net.policy_hidden = {8};
    cfg.trainer.num_envs = 2;
    cfg.trainer.horizon = 6;
    cfg.trainer.team_sizes = {{1, 1}};
    return cfg;
}

std::vector<double> params_of(ActorCritic& net) {
    std::vector<double> out;
    net.visit([&](const std::string&, Tensor& t) {
        out.insert(out.end(), t.data.begin(), t.data.end());
    });
    return out;
}

}  // namespace

TEST_CASE("policy checkpoints round-trip parameters at f32 precision") {
    PipelineConfig cfg = small_cfg();
    Rng rng(21);
    ActorCritic net = ActorCritic::make(cfg.net, cfg.obs);
    net.init(rng);

    std::string path = temp_path("policy.ckpt");
    save_policy_checkpoint(path, net, false);
    PolicyCheckpoint loaded = load_policy_checkpoint(path, cfg);
    CHECK(!loaded.dense_active);

    std::vector<double> a = params_of(net);
    std::vector<double> b = params_of(loaded.net);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        // Stored as f32: loading reproduces the f32 value exactly.
        CHECK(b[i] == static_cast<double>(static_cast<float>(a[i])));
    }
    std::remove(path.c_str());
}

TEST_CASE("dimension mismatches are rejected with a diagnostic") {
    PipelineConfig cfg = small_cfg();
    Rng rng(22);
    ActorCritic net = ActorCritic::make(cfg.net, cfg.obs);
    net.init(rng);
    std::string path = temp_path("dims.ckpt");
    save_policy_checkpoint(path, net, true);

    PipelineConfig other = small_cfg();
    other.net.encoder_out = 8;
    CHECK_THROWS_WITH_AS(load_policy_checkpoint(path, other),
                         doctest::Contains("dimension mismatch"),
                         std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("garbage files are rejected by the magic check") {
    std::string path = temp_path("garbage.ckpt");
    {
        std::ofstream os(path);
        os << "definitely not a checkpoint";
    }
    CHECK_THROWS_WITH_AS(load_policy_checkpoint(path, small_cfg()),
                         doctest::Contains("magic"), std::runtime_error);
    std::remove(path.c_str());
    CHECK_THROWS(load_policy_checkpoint("/nonexistent/nope.ckpt", small_cfg()));
}

TEST_CASE("trainer checkpoints resume bit-exactly") {
    PipelineConfig cfg = small_cfg();
    Trainer trainer(cfg, 77);
    for (int i = 0; i < 3; ++i) trainer.iterate();

    std::string path = temp_path("trainer.ckpt");
    trainer.save(path);

    // Two independent resumes from the same file must agree bitwise.
    Trainer resume1(cfg, 1);
    resume1.load(path);
    Trainer resume2(cfg, 2);
    resume2.load(path);
    CHECK(resume1.iteration() == 3);
    CHECK(params_of(resume1.net()) == params_of(resume2.net()));

    IterationMetrics m1 = resume1.iterate();
    IterationMetrics m2 = resume2.iterate();
    CHECK(params_of(resume1.net()) == params_of(resume2.net()));
    CHECK(m1.ppo.policy_loss == m2.ppo.policy_loss);
    CHECK(m1.episodes_finished == m2.episodes_finished);
    std::remove(path.c_str());
}

TEST_CASE("trainer checkpoints preserve curriculum and win-rate state") {
    PipelineConfig cfg = small_cfg();
    Trainer trainer(cfg, 31);
    for (int i = 0; i < 4; ++i) trainer.iterate();

    std::string path = temp_path("state.ckpt");
    trainer.save(path);

    Trainer resumed(cfg, 999);
    resumed.load(path);
    CHECK(resumed.iteration() == trainer.iteration());
    CHECK(resumed.pool().size() == trainer.pool().size());
    CHECK(resumed.tracker().count(kBotAdversaryId) ==
          trainer.tracker().count(kBotAdversaryId));
    CHECK(resumed.tracker().rate(kBotAdversaryId) ==
          trainer.tracker().rate(kBotAdversaryId));
    REQUIRE(resumed.envs().size() == trainer.envs().size());
    for (size_t e = 0; e < trainer.envs().size(); ++e) {
        CHECK(resumed.envs()[e].curriculum.init_pos_level ==
              trainer.envs()[e].curriculum.init_pos_level);
        CHECK(resumed.envs()[e].curriculum.field_level ==
              trainer.envs()[e].curriculum.field_level);
    }
    CHECK(resumed.reward_config().dense_active ==
          trainer.reward_config().dense_active);
    std::remove(path.c_str());
}
