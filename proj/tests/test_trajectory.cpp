#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "doctest.h"
#include "soccer/bot.hpp"
#include "soccer/physics.hpp"
#include "soccer/trajectory.hpp"

using namespace soccer;

namespace {

// Records one bot-vs-bot episode and returns the log path.
std::string record_episode(const char* name, uint64_t seed, int max_steps) {
    PipelineConfig cfg;
    Rng rng(seed);
    SpawnSpec spec{2, 2, 1.0, 0.3, 0.7};
    WorldState w = spawn_episode(cfg.field, spec, rng);

    std::string path = std::string("/tmp/soccer_traj_") + name + ".jsonl";
    TrajectoryWriter writer(path, w, cfg.sim);
    std::optional<Outcome> outcome;
    for (int step = 0; step < max_steps && !outcome; ++step) {
        std::vector<ActionCommand> actions = bot_team_actions(w, Team::Blue);
        std::vector<ActionCommand> red = bot_team_actions(w, Team::Red);
        actions.insert(actions.end(), red.begin(), red.end());
        StepEvents events = step_world(w, actions, cfg.sim);
        OwnershipState own = assign_ownership(w);
        writer.record_step(actions, w, events, own);
        outcome = check_termination(w, cfg.sim);
    }
    writer.finish(outcome.value_or(Outcome::Timeout));
    return path;
}

}  // namespace

TEST_CASE("a recorded episode replays bit-for-bit") {
    std::string path = record_episode("ok", 5, 400);
    ReplayResult r = replay_trajectory(path);
    CHECK(r.ok);
    CHECK(r.steps > 0);
    CHECK(r.error.empty());
    std::remove(path.c_str());
}

TEST_CASE("tampered logs are detected") {
    std::string path = record_episode("tamper", 6, 50);

    // Flip one recorded ball coordinate in the middle of the file.
    std::ifstream is(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    is.close();
    REQUIRE(lines.size() > 5);
    size_t mid = lines.size() / 2;
    size_t pos = lines[mid].find("\"ball_p\":[");
    REQUIRE(pos != std::string::npos);
    lines[mid].replace(pos + 10, 1, lines[mid][pos + 10] == '9' ? "8" : "9");
    std::ofstream os(path);
    for (const std::string& l : lines) os << l << '\n';
    os.close();

    ReplayResult r = replay_trajectory(path);
    CHECK(!r.ok);
    CHECK(!r.error.empty());
    std::remove(path.c_str());
}

TEST_CASE("missing or malformed files fail gracefully") {
    ReplayResult missing = replay_trajectory("/nonexistent/episode.jsonl");
    CHECK(!missing.ok);

    std::string path = "/tmp/soccer_traj_bad.jsonl";
    {
        std::ofstream os(path);
        os << "this is not json\n";
    }
    ReplayResult bad = replay_trajectory(path);
    CHECK(!bad.ok);
    std::remove(path.c_str());
}
