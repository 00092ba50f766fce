#include "mrsusp/baselines.hpp"

#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "mrsusp/env.hpp"

namespace mrsusp {

double uncontrolled_policy() {
    return 0.0;
}

Controller make_uncontrolled_controller() {
    return [](double, const Measurements&) { return uncontrolled_policy(); };
}

Controller make_pid_controller(const PidGains& gains, double control_period) {
    gains.validate();
    auto state = std::make_shared<PidState>();
    state->period = control_period;
    return [gains, state](double, const Measurements& m) { return pid_step(gains, *state, m.q); };
}

Controller make_actor_controller(Mlp actor, ObservationMode observation) {
    auto net = std::make_shared<Mlp>(std::move(actor));
    return [net, observation](double, const Measurements& m) {
        return forward(*net, build_observation(m, observation))(0);
    };
}

PidTuneResult tune_pid_on_bump(const LabConfig& cfg) {
    if (cfg.pso.dimensions() != 3)
        throw std::invalid_argument("tune_pid_on_bump: pso bounds must cover (kp, ki, kd)");
    SimConfig sim = cfg.sim;
    sim.mode = ControllerMode::pid;
    const RoadProfile road = cfg.road.make();

    auto run = [&](const PidGains& gains) {
        return simulate(sim, cfg.suspension, cfg.bouc_wen, road,
                        make_pid_controller(gains, sim.control_period));
    };
    auto objective = [&](const std::vector<double>& p) {
        try {
            return run({p[0], p[1], p[2]}).metrics.rms_ba;
        } catch (const std::runtime_error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const PsoResult pso = pso_tune(objective, cfg.pso);
    PidTuneResult result;
    result.gains = {pso.best_position[0], pso.best_position[1], pso.best_position[2]};
    result.best_cost = pso.best_cost;
    result.trace = pso.trace;
    result.metrics = run(result.gains).metrics;
    return result;
}

void write_gains_json(const std::string& path, const PidTuneResult& result,
                      const PsoConfig& pso) {
    nlohmann::json j;
    j["gains"] = {{"kp", result.gains.kp}, {"ki", result.gains.ki}, {"kd", result.gains.kd}};
    j["cost"] = result.best_cost;
    j["trace"] = result.trace;
    j["metrics"] = {{"rms",
                     {{"ba", result.metrics.rms_ba},
                      {"sws", result.metrics.rms_sws},
                      {"dtl", result.metrics.rms_dtl}}},
                    {"peak",
                     {{"ba", result.metrics.peak_ba},
                      {"sws", result.metrics.peak_sws},
                      {"dtl", result.metrics.peak_dtl}}}};
    j["pso"] = {{"swarm_size", pso.swarm_size}, {"iterations", pso.iterations},
                {"inertia", pso.inertia},       {"cognitive", pso.cognitive},
                {"social", pso.social},         {"lower", pso.lower},
                {"upper", pso.upper},           {"seed", pso.seed}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

PidGains read_gains_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    const auto& g = j.at("gains");
    return {g.at("kp").get<double>(), g.at("ki").get<double>(), g.at("kd").get<double>()};
}

}  // namespace mrsusp
