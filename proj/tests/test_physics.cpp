#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "soccer/physics.hpp"

using namespace soccer;

namespace {

WorldState two_agent_world() {
    WorldState w;
    AgentState blue;
    blue.team = Team::Blue;
    blue.position = {-1.0, 0.0};
    AgentState red;
    red.team = Team::Red;
    red.position = {1.0, 0.0};
    red.heading = 3.14159265358979323846;
    w.agents = {blue, red};
    w.ball.position = {0.0, 0.0};
    return w;
}

std::vector<ActionCommand> one_action() { return {ActionCommand{}}; }
std::vector<ActionCommand> two_actions() { return {ActionCommand{}, ActionCommand{}}; }

}  // namespace

TEST_CASE("unit-disk remap corner and axis values") {
    // corners of the square land on the disk at sqrt(1/2) per axis
    Vec2 c = remap_unit_disk(1.0, 1.0);
    CHECK(c.x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // axes are unchanged
    Vec2 a = remap_unit_disk(1.0, 0.0);
    CHECK(a.x == 1.0);
    CHECK(a.y == 0.0);
    Vec2 z = remap_unit_disk(0.0, 0.0);
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);

    // (0.5, -0.5): x' = 0.5*sqrt(1-0.125) = 0.46770717334674267
    Vec2 m = remap_unit_disk(0.5, -0.5);
    CHECK(m.x == doctest::Approx(0.46770717334674267).epsilon(1e-12));
    CHECK(m.y == doctest::Approx(-0.46770717334674267).epsilon(1e-12));
}

TEST_CASE("remap never leaves the unit disk and the inverse round-trips") {
    for (double x = -1.0; x <= 1.0001; x += 0.125) {
        for (double y = -1.0; y <= 1.0001; y += 0.125) {
            double cx = std::min(x, 1.0), cy = std::min(y, 1.0);
            Vec2 p = remap_unit_disk(cx, cy);
            CHECK(p.norm() <= 1.0 + 1e-12);
            Vec2 back = remap_unit_disk_inverse(p.x, p.y);
            CHECK(back.x == doctest::Approx(cx).epsilon(1e-9));
            CHECK(back.y == doctest::Approx(cy).epsilon(1e-9));
        }
    }
}

TEST_CASE("pd_track is proportional-derivative with clamping") {
    PdGains g{60.0, 1.0, 80.0};
    // 60*(1 - 0) - 1*2 = 58
    CHECK(pd_track(1.0, 0.0, 2.0, g) == doctest::Approx(58.0));
    CHECK(pd_track(10.0, 0.0, 0.0, g) == 80.0);   // clamped
    CHECK(pd_track(-10.0, 0.0, 0.0, g) == -80.0);
}

TEST_CASE("velocity tracking converges within 5 percent in 2 seconds") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents.pop_back();
    w.ball.position = {3.0, 2.0};  // out of the way

    ActionCommand cmd;
    cmd.v_x = 1.0;  // full forward, heading 0 -> world +x
    std::vector<ActionCommand> acts{cmd};
    for (int i = 0; i < 20; ++i) step_world(w, acts, sim);
    CHECK(w.agents[0].linear_velocity.x ==
          doctest::Approx(sim.max_speed).epsilon(0.05));
    CHECK(std::fabs(w.agents[0].linear_velocity.y) < 0.05 * sim.max_speed);
}

TEST_CASE("angular command tracks max angular speed") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents.pop_back();
    w.ball.position = {3.0, 2.0};

    ActionCommand cmd;
    cmd.v_theta = 1.0;
    std::vector<ActionCommand> acts{cmd};
    for (int i = 0; i < 20; ++i) step_world(w, acts, sim);
    CHECK(w.agents[0].angular_velocity ==
          doctest::Approx(sim.max_ang_speed).epsilon(0.05));
}

TEST_CASE("kick rotates with the agent heading") {
    SimConfig sim;
    WorldState w;
    AgentState a;
    a.position = {0.0, 0.0};
    a.heading = 3.14159265358979323846 / 2.0;  // facing +y
    w.agents = {a};
    w.ball.position = {0.2, 0.0};  // inside K (radius 0.3)

    apply_kick(w, 0, {1.0, 0.0}, sim);
    // ego +x kick becomes world +y at heading pi/2
    CHECK(w.ball.velocity.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.ball.velocity.y == doctest::Approx(sim.max_kick_speed).epsilon(1e-12));
}

TEST_CASE("kick outside the kickable area does nothing") {
    SimConfig sim;
    WorldState w;
    AgentState a;
    w.agents = {a};
    w.ball.position = {0.31, 0.0};
    w.ball.velocity = {0.1, 0.2};
    apply_kick(w, 0, {1.0, 0.0}, sim);
    CHECK(w.ball.velocity.x == 0.1);
    CHECK(w.ball.velocity.y == 0.2);
}

TEST_CASE("ball friction halves speed every half-life") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents.clear();
    w.ball.position = {-3.0, -2.0};
    w.ball.velocity = {0.0, 0.4};  // slow enough to stay in bounds

    double v0 = w.ball.velocity.norm();
    int steps = static_cast<int>(sim.ball_friction_half_life / sim.dt);
    std::vector<ActionCommand> acts;
    for (int i = 0; i < steps; ++i) step_world(w, acts, sim);
    CHECK(w.ball.velocity.norm() == doctest::Approx(0.5 * v0).epsilon(1e-9));
}

TEST_CASE("ball crossing the goal aperture scores for the attacking team") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.ball.position = {4.4, 0.0};
    w.ball.velocity = {3.0, 0.0};  // toward +x goal: blue scores

    StepEvents ev = step_world(w, two_actions(), sim);
    CHECK(ev.goal);
    CHECK(ev.goal_team == Team::Blue);
    REQUIRE(w.score_event.has_value());
    CHECK(*w.score_event == ScoreEvent::BlueGoal);
    CHECK(check_termination(w, sim) == Outcome::BlueWin);
}

TEST_CASE("ball out wide of the goal respawns on the border with zero velocity") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.ball.position = {4.4, 2.0};  // outside the aperture (goal half-width 0.75)
    w.ball.velocity = {3.0, 0.0};

    StepEvents ev = step_world(w, two_actions(), sim);
    CHECK(ev.ball_out);
    CHECK(!ev.goal);
    CHECK(w.ball.position.x == doctest::Approx(w.field.half_length()));
    CHECK(w.ball.velocity.norm() == 0.0);
    CHECK(ev.ball_exit_point.x == w.ball.position.x);
}

TEST_CASE("agent-agent contact separates, flags both and conserves momentum") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents[0].position = {0.0, 0.0};
    w.agents[1].position = {0.2, 0.0};
    w.agents[0].linear_velocity = {1.0, 0.0};
    w.agents[1].linear_velocity = {-1.0, 0.0};
    w.ball.position = {-3.0, -2.0};

    StepEvents ev = step_world(w, two_actions(), sim);
    CHECK(ev.collision[0] == 1);
    CHECK(ev.collision[1] == 1);
    double gap = (w.agents[1].position - w.agents[0].position).norm();
    CHECK(gap >= 2.0 * w.field.agent_radius - 1e-9);
    // restitution 0: equal masses kill the closing velocity
    double closing = (w.agents[1].linear_velocity - w.agents[0].linear_velocity)
                         .dot((w.agents[1].position - w.agents[0].position)
                                  .normalized_or_zero());
    CHECK(closing >= -1e-9);
}

TEST_CASE("wall contact reflects with restitution and flags the agent") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents.pop_back();
    w.agents[0].position = {4.82, 0.0};  // wall at 5.0 - 0.15 = 4.85 for centers
    w.agents[0].linear_velocity = {1.0, 0.0};
    w.ball.position = {-3.0, -2.0};

    StepEvents ev = step_world(w, one_action(), sim);
    CHECK(ev.collision[0] == 1);
    double bound = w.field.half_length() + w.field.wall_offset - w.field.agent_radius;
    CHECK(w.agents[0].position.x <= bound + 1e-12);
}

TEST_CASE("ball contact does not raise the collision flag") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.agents.pop_back();
    w.agents[0].position = {0.0, 0.0};
    w.ball.position = {0.1, 0.0};
    w.ball.velocity = {-1.0, 0.0};

    StepEvents ev = step_world(w, one_action(), sim);
    CHECK(ev.collision[0] == 0);
}

TEST_CASE("step_world rejects a wrong number of actions") {
    SimConfig sim;
    WorldState w = two_agent_world();
    CHECK_THROWS_AS(step_world(w, one_action(), sim),
                    std::invalid_argument);
}

TEST_CASE("timeout at the episode limit") {
    SimConfig sim;
    WorldState w = two_agent_world();
    w.sim_time = sim.episode_limit;
    CHECK(check_termination(w, sim) == Outcome::Timeout);
    w.sim_time = sim.episode_limit - 0.05;
    CHECK(!check_termination(w, sim).has_value());
}
