#include "soccer/trajectory.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "soccer/physics.hpp"

namespace soccer {

namespace {

using json = nlohmann::json;

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }
Vec2 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json agents_json(const std::vector<AgentState>& agents) {
    json arr = json::array();
    for (const AgentState& a : agents) {
        arr.push_back({{"p", vec_json(a.position)},
                       {"h", a.heading},
                       {"v", vec_json(a.linear_velocity)},
                       {"w", a.angular_velocity},
                       {"team", a.team == Team::Blue ? "blue" : "red"},
                       {"active", a.active}});
    }
    return arr;
}

std::vector<AgentState> agents_from(const json& arr) {
    std::vector<AgentState> agents;
    for (const json& j : arr) {
        AgentState a;
        a.position = vec_from(j.at("p"));
        a.heading = j.at("h").get<double>();
        a.linear_velocity = vec_from(j.at("v"));
        a.angular_velocity = j.at("w").get<double>();
        a.team = j.at("team").get<std::string>() == "blue" ? Team::Blue : Team::Red;
        a.active = j.at("active").get<bool>();
        agents.push_back(a);
    }
    return agents;
}

json state_json(const WorldState& w) {
    json j = {{"agents", agents_json(w.agents)},
              {"ball_p", vec_json(w.ball.position)},
              {"ball_v", vec_json(w.ball.velocity)},
              {"sim_time", w.sim_time},
              {"episode_step", w.episode_step}};
    if (w.score_event)
        j["score_event"] = *w.score_event == ScoreEvent::BlueGoal ? "blue" : "red";
    return j;
}

void state_from(const json& j, WorldState& w) {
    w.agents = agents_from(j.at("agents"));
    w.ball.position = vec_from(j.at("ball_p"));
    w.ball.velocity = vec_from(j.at("ball_v"));
    w.sim_time = j.at("sim_time").get<double>();
    w.episode_step = j.at("episode_step").get<int>();
    w.score_event.reset();
    if (j.contains("score_event"))
        w.score_event = j.at("score_event").get<std::string>() == "blue"
                            ? ScoreEvent::BlueGoal
                            : ScoreEvent::RedGoal;
}

json field_json(const FieldGeometry& f) {
    return {{"field_length", f.field_length},
            {"field_width", f.field_width},
            {"goal_width", f.goal_width},
            {"wall_offset", f.wall_offset},
            {"kickable_radius", f.kickable_radius},
            {"ownership_radius", f.ownership_radius},
            {"agent_radius", f.agent_radius},
            {"ball_radius", f.ball_radius}};
}

FieldGeometry field_from(const json& j) {
    FieldGeometry f;
    f.field_length = j.at("field_length").get<double>();
    f.field_width = j.at("field_width").get<double>();
    f.goal_width = j.at("goal_width").get<double>();
    f.wall_offset = j.at("wall_offset").get<double>();
    f.kickable_radius = j.at("kickable_radius").get<double>();
    f.ownership_radius = j.at("ownership_radius").get<double>();
    f.agent_radius = j.at("agent_radius").get<double>();
    f.ball_radius = j.at("ball_radius").get<double>();
    return f;
}

json sim_json(const SimConfig& s) {
    return {{"dt", s.dt},
            {"substeps", s.substeps},
            {"agent_mass", s.agent_mass},
            {"ball_mass", s.ball_mass},
            {"max_speed", s.max_speed},
            {"max_ang_speed", s.max_ang_speed},
            {"max_kick_speed", s.max_kick_speed},
            {"pd_kp", s.pd_kp},
            {"pd_kd", s.pd_kd},
            {"pd_kp_ang", s.pd_kp_ang},
            {"pd_kd_ang", s.pd_kd_ang},
            {"max_force", s.max_force},
            {"max_torque", s.max_torque},
            {"ball_friction_half_life", s.ball_friction_half_life},
            {"restitution_wall", s.restitution_wall},
            {"restitution_agent", s.restitution_agent},
            {"restitution_ball", s.restitution_ball},
            {"episode_limit", s.episode_limit}};
}

SimConfig sim_from(const json& j) {
    SimConfig s;
    s.dt = j.at("dt").get<double>();
    s.substeps = j.at("substeps").get<int>();
    s.agent_mass = j.at("agent_mass").get<double>();
    s.ball_mass = j.at("ball_mass").get<double>();
    s.max_speed = j.at("max_speed").get<double>();
    s.max_ang_speed = j.at("max_ang_speed").get<double>();
    s.max_kick_speed = j.at("max_kick_speed").get<double>();
    s.pd_kp = j.at("pd_kp").get<double>();
    s.pd_kd = j.at("pd_kd").get<double>();
    s.pd_kp_ang = j.at("pd_kp_ang").get<double>();
    s.pd_kd_ang = j.at("pd_kd_ang").get<double>();
    s.max_force = j.at("max_force").get<double>();
    s.max_torque = j.at("max_torque").get<double>();
    s.ball_friction_half_life = j.at("ball_friction_half_life").get<double>();
    s.restitution_wall = j.at("restitution_wall").get<double>();
    s.restitution_agent = j.at("restitution_agent").get<double>();
    s.restitution_ball = j.at("restitution_ball").get<double>();
    s.episode_limit = j.at("episode_limit").get<double>();
    return s;
}

bool agents_equal(const std::vector<AgentState>& a,
                  const std::vector<AgentState>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].position.x != b[i].position.x ||
            a[i].position.y != b[i].position.y ||
            a[i].heading != b[i].heading ||
            a[i].linear_velocity.x != b[i].linear_velocity.x ||
            a[i].linear_velocity.y != b[i].linear_velocity.y ||
            a[i].angular_velocity != b[i].angular_velocity ||
            a[i].team != b[i].team || a[i].active != b[i].active)
            return false;
    }
    return true;
}

bool states_equal(const WorldState& a, const WorldState& b) {
    return agents_equal(a.agents, b.agents) &&
           a.ball.position.x == b.ball.position.x &&
           a.ball.position.y == b.ball.position.y &&
           a.ball.velocity.x == b.ball.velocity.x &&
           a.ball.velocity.y == b.ball.velocity.y &&
           a.sim_time == b.sim_time && a.episode_step == b.episode_step &&
           a.score_event == b.score_event;
}

}  // namespace

TrajectoryWriter::TrajectoryWriter(const std::string& path,
                                   const WorldState& initial,
                                   const SimConfig& sim)
    : os_(path) {
    if (!os_) throw std::runtime_error("trajectory: cannot open " + path);
    json header = {{"type", "header"},
                   {"field", field_json(initial.field)},
                   {"sim", sim_json(sim)},
                   {"state", state_json(initial)}};
    os_ << header.dump() << '\n';
}

void TrajectoryWriter::record_step(const std::vector<ActionCommand>& actions,
                                   const WorldState& post_step,
                                   const StepEvents& events,
                                   const OwnershipState& ownership) {
    json acts = json::array();
    for (const ActionCommand& a : actions)
        acts.push_back(json::array({a.v_x, a.v_y, a.v_theta, a.k_x, a.k_y}));
    json line = {{"type", "step"},
                 {"actions", acts},
                 {"state", state_json(post_step)}};
    if (events.goal)
        line["goal"] = events.goal_team == Team::Blue ? "blue" : "red";
    if (events.ball_out) line["ball_out"] = vec_json(events.ball_exit_point);
    bool any_collision = false;
    for (uint8_t c : events.collision) any_collision |= (c != 0);
    if (any_collision) line["collision"] = events.collision;
    if (ownership.owner_agent) line["owner"] = *ownership.owner_agent;
    os_ << line.dump() << '\n';
}

void TrajectoryWriter::finish(Outcome outcome) {
    const char* name = outcome == Outcome::BlueWin  ? "blue_win"
                       : outcome == Outcome::RedWin ? "red_win"
                                                    : "timeout";
    os_ << json{{"type", "end"}, {"outcome", name}}.dump() << '\n';
    os_.flush();
}

ReplayResult replay_trajectory(const std::string& path) {
    ReplayResult result;
    std::ifstream is(path);
    if (!is) {
        result.error = "cannot open " + path;
        return result;
    }
    std::string line;
    if (!std::getline(is, line)) {
        result.error = "missing header line";
        return result;
    }

    WorldState world;
    SimConfig sim;
    try {
        json header = json::parse(line);
        if (header.at("type") != "header") {
            result.error = "first line is not a header";
            return result;
        }
        world.field = field_from(header.at("field"));
        sim = sim_from(header.at("sim"));
        state_from(header.at("state"), world);

        while (std::getline(is, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            if (j.at("type") == "end") break;
            if (j.at("type") != "step") {
                result.error = "unexpected line type";
                return result;
            }
            std::vector<ActionCommand> actions;
            for (const json& a : j.at("actions"))
                actions.push_back({a.at(0).get<double>(), a.at(1).get<double>(),
                                   a.at(2).get<double>(), a.at(3).get<double>(),
                                   a.at(4).get<double>()});
            step_world(world, actions, sim);
            WorldState logged = world;  // copies field geometry
            state_from(j.at("state"), logged);
            ++result.steps;
            if (!states_equal(world, logged)) {
                result.error =
                    "state mismatch at step " + std::to_string(result.steps);
                return result;
            }
        }
    } catch (const std::exception& e) {
        result.error = std::string("parse/replay error: ") + e.what();
        return result;
    }
    result.ok = true;
    return result;
}

}  // namespace soccer
