#include "mrsusp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mrsusp {

using nlohmann::json;

RoadProfile RoadSpec::make() const {
    return kind == Kind::flat ? RoadProfile::flat() : RoadProfile::bump(bump);
}

void LabConfig::validate() const {
    suspension.validate();
    bouc_wen.validate();
    if (road.kind == RoadSpec::Kind::bump) road.bump.validate();
    sim.validate();
    td3.validate();
    pso.validate();
    pid.validate();
}

LabConfig default_config() {
    return LabConfig{};
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key()))
            throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

void parse_suspension(const json& j, SuspensionParams& p) {
    check_keys(j, {"m_b", "m_w", "k_s", "k_t", "c_s"}, "suspension");
    read(j, "m_b", p.m_b);
    read(j, "m_w", p.m_w);
    read(j, "k_s", p.k_s);
    read(j, "k_t", p.k_t);
    read(j, "c_s", p.c_s);
}

void parse_bouc_wen(const json& j, BoucWenParams& p) {
    check_keys(j,
               {"c0a", "c0b", "c1a", "c1b", "k0", "k1", "alpha_a", "alpha_b", "beta", "gamma",
                "eta", "a_bw", "n", "x0"},
               "damper");
    read(j, "c0a", p.c0a);
    read(j, "c0b", p.c0b);
    read(j, "c1a", p.c1a);
    read(j, "c1b", p.c1b);
    read(j, "k0", p.k0);
    read(j, "k1", p.k1);
    read(j, "alpha_a", p.alpha_a);
    read(j, "alpha_b", p.alpha_b);
    read(j, "beta", p.beta);
    read(j, "gamma", p.gamma);
    read(j, "eta", p.eta);
    read(j, "a_bw", p.a_bw);
    read(j, "n", p.n);
    read(j, "x0", p.x0);
}

void parse_road(const json& j, RoadSpec& r) {
    check_keys(j, {"profile", "amplitude", "width", "speed", "start_time"}, "road");
    std::string profile = r.kind == RoadSpec::Kind::flat ? "flat" : "bump";
    read(j, "profile", profile);
    if (profile == "flat")
        r.kind = RoadSpec::Kind::flat;
    else if (profile == "bump")
        r.kind = RoadSpec::Kind::bump;
    else
        throw std::invalid_argument("config: road.profile must be 'flat' or 'bump'");
    read(j, "amplitude", r.bump.amplitude);
    read(j, "width", r.bump.width);
    read(j, "speed", r.bump.speed);
    read(j, "start_time", r.bump.start_time);
}

void parse_sim(const json& j, SimConfig& s) {
    check_keys(j,
               {"dt_physics", "control_period", "horizon", "mode", "observation", "reward_k",
                "seed"},
               "sim");
    read(j, "dt_physics", s.dt_physics);
    read(j, "control_period", s.control_period);
    read(j, "horizon", s.horizon);
    if (auto it = j.find("mode"); it != j.end())
        s.mode = controller_mode_from_string(it->get<std::string>());
    if (auto it = j.find("observation"); it != j.end()) {
        const std::string obs = it->get<std::string>();
        if (obs == "standard")
            s.observation = ObservationMode::standard;
        else if (obs == "strict")
            s.observation = ObservationMode::strict;
        else
            throw std::invalid_argument("config: sim.observation must be 'standard' or 'strict'");
    }
    read(j, "reward_k", s.reward_k);
    read(j, "seed", s.seed);
}

void parse_td3(const json& j, Td3Config& t) {
    check_keys(j,
               {"gamma", "actor_lr", "critic_lr", "tau", "policy_delay", "explore_sigma",
                "explore_sigma_final", "target_sigma", "noise_clip", "batch_size",
                "buffer_capacity", "warmup_steps", "episodes", "hidden1", "hidden2", "seed"},
               "td3");
    read(j, "gamma", t.gamma);
    read(j, "actor_lr", t.actor_lr);
    read(j, "critic_lr", t.critic_lr);
    read(j, "tau", t.tau);
    read(j, "policy_delay", t.policy_delay);
    read(j, "explore_sigma", t.explore_sigma);
    read(j, "explore_sigma_final", t.explore_sigma_final);
    read(j, "target_sigma", t.target_sigma);
    read(j, "noise_clip", t.noise_clip);
    read(j, "batch_size", t.batch_size);
    read(j, "buffer_capacity", t.buffer_capacity);
    read(j, "warmup_steps", t.warmup_steps);
    read(j, "episodes", t.episodes);
    read(j, "hidden1", t.hidden1);
    read(j, "hidden2", t.hidden2);
    read(j, "seed", t.seed);
}

void parse_pso(const json& j, PsoConfig& p) {
    check_keys(j,
               {"swarm_size", "iterations", "inertia", "cognitive", "social", "lower", "upper",
                "seed"},
               "pso");
    read(j, "swarm_size", p.swarm_size);
    read(j, "iterations", p.iterations);
    read(j, "inertia", p.inertia);
    read(j, "cognitive", p.cognitive);
    read(j, "social", p.social);
    read(j, "lower", p.lower);
    read(j, "upper", p.upper);
    read(j, "seed", p.seed);
}

void parse_pid(const json& j, PidGains& g) {
    check_keys(j, {"kp", "ki", "kd"}, "pid");
    read(j, "kp", g.kp);
    read(j, "ki", g.ki);
    read(j, "kd", g.kd);
}

}  // namespace

LabConfig config_from_json_text(const std::string& text) {
    json j = json::parse(text);
    check_keys(j, {"suspension", "damper", "road", "sim", "td3", "pso", "pid"}, "top level");
    LabConfig cfg;
    if (j.contains("suspension")) parse_suspension(j["suspension"], cfg.suspension);
    if (j.contains("damper")) parse_bouc_wen(j["damper"], cfg.bouc_wen);
    if (j.contains("road")) parse_road(j["road"], cfg.road);
    if (j.contains("sim")) parse_sim(j["sim"], cfg.sim);
    if (j.contains("td3")) parse_td3(j["td3"], cfg.td3);
    if (j.contains("pso")) parse_pso(j["pso"], cfg.pso);
    if (j.contains("pid")) parse_pid(j["pid"], cfg.pid);
    cfg.validate();
    return cfg;
}

std::string config_to_json_text(const LabConfig& cfg) {
    json j;
    j["suspension"] = {{"m_b", cfg.suspension.m_b},
                       {"m_w", cfg.suspension.m_w},
                       {"k_s", cfg.suspension.k_s},
                       {"k_t", cfg.suspension.k_t},
                       {"c_s", cfg.suspension.c_s}};
    j["damper"] = {{"c0a", cfg.bouc_wen.c0a},     {"c0b", cfg.bouc_wen.c0b},
                   {"c1a", cfg.bouc_wen.c1a},     {"c1b", cfg.bouc_wen.c1b},
                   {"k0", cfg.bouc_wen.k0},       {"k1", cfg.bouc_wen.k1},
                   {"alpha_a", cfg.bouc_wen.alpha_a}, {"alpha_b", cfg.bouc_wen.alpha_b},
                   {"beta", cfg.bouc_wen.beta},   {"gamma", cfg.bouc_wen.gamma},
                   {"eta", cfg.bouc_wen.eta},     {"a_bw", cfg.bouc_wen.a_bw},
                   {"n", cfg.bouc_wen.n},         {"x0", cfg.bouc_wen.x0}};
    j["road"] = {{"profile", cfg.road.kind == RoadSpec::Kind::flat ? "flat" : "bump"},
                 {"amplitude", cfg.road.bump.amplitude},
                 {"width", cfg.road.bump.width},
                 {"speed", cfg.road.bump.speed},
                 {"start_time", cfg.road.bump.start_time}};
    j["sim"] = {{"dt_physics", cfg.sim.dt_physics},
                {"control_period", cfg.sim.control_period},
                {"horizon", cfg.sim.horizon},
                {"mode", to_string(cfg.sim.mode)},
                {"observation",
                 cfg.sim.observation == ObservationMode::strict ? "strict" : "standard"},
                {"reward_k", cfg.sim.reward_k},
                {"seed", cfg.sim.seed}};
    j["td3"] = {{"gamma", cfg.td3.gamma},
                {"actor_lr", cfg.td3.actor_lr},
                {"critic_lr", cfg.td3.critic_lr},
                {"tau", cfg.td3.tau},
                {"policy_delay", cfg.td3.policy_delay},
                {"explore_sigma", cfg.td3.explore_sigma},
                {"explore_sigma_final", cfg.td3.explore_sigma_final},
                {"target_sigma", cfg.td3.target_sigma},
                {"noise_clip", cfg.td3.noise_clip},
                {"batch_size", cfg.td3.batch_size},
                {"buffer_capacity", cfg.td3.buffer_capacity},
                {"warmup_steps", cfg.td3.warmup_steps},
                {"episodes", cfg.td3.episodes},
                {"hidden1", cfg.td3.hidden1},
                {"hidden2", cfg.td3.hidden2},
                {"seed", cfg.td3.seed}};
    j["pso"] = {{"swarm_size", cfg.pso.swarm_size}, {"iterations", cfg.pso.iterations},
                {"inertia", cfg.pso.inertia},       {"cognitive", cfg.pso.cognitive},
                {"social", cfg.pso.social},         {"lower", cfg.pso.lower},
                {"upper", cfg.pso.upper},           {"seed", cfg.pso.seed}};
    j["pid"] = {{"kp", cfg.pid.kp}, {"ki", cfg.pid.ki}, {"kd", cfg.pid.kd}};
    return j.dump(2);
}

LabConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_json_text(text.str());
}

void save_config(const std::string& path, const LabConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << config_to_json_text(cfg) << "\n";
}

}  // namespace mrsusp
