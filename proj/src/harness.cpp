#include "mrsusp/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mrsusp {

std::string to_string(ControllerMode mode) {
    switch (mode) {
        case ControllerMode::uncontrolled: return "uncontrolled";
        case ControllerMode::passive_linear: return "passive-linear";
        case ControllerMode::pid: return "pid";
        case ControllerMode::td3: return "td3";
    }
    return "?";
}

ControllerMode controller_mode_from_string(const std::string& name) {
    if (name == "uncontrolled") return ControllerMode::uncontrolled;
    if (name == "passive-linear") return ControllerMode::passive_linear;
    if (name == "pid") return ControllerMode::pid;
    if (name == "td3") return ControllerMode::td3;
    throw std::invalid_argument("unknown controller mode: " + name);
}

int SimConfig::substeps_per_control() const {
    return static_cast<int>(std::llround(control_period / dt_physics));
}

void SimConfig::validate() const {
    if (!(dt_physics > 0.0)) throw std::invalid_argument("SimConfig: dt_physics must be positive");
    if (!(control_period > 0.0))
        throw std::invalid_argument("SimConfig: control_period must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("SimConfig: horizon must be positive");
    const int n = substeps_per_control();
    if (n < 1 || std::abs(control_period - n * dt_physics) > 1e-9 * control_period)
        throw std::invalid_argument(
            "SimConfig: control_period must be an integer multiple of dt_physics");
    const long m = std::lround(horizon / control_period);
    if (m < 1 || std::abs(horizon - static_cast<double>(m) * control_period) > 1e-9 * horizon)
        throw std::invalid_argument(
            "SimConfig: horizon must be an integer multiple of control_period");
    if (!(reward_k >= 0.0)) throw std::invalid_argument("SimConfig: reward_k must be >= 0");
}

Measurements measure(const CoupledState& s, const SuspensionParams& sp, const BoucWenParams& bp,
                     ForceMode mode) {
    const double f = suspension_force(s, sp, bp, mode);
    return {body_acceleration(s.vehicle, f, sp), s.vehicle.x_b - s.vehicle.x_w,
            s.vehicle.v_b - s.vehicle.v_w, f};
}

double rms(const std::vector<double>& series) {
    if (series.empty()) throw std::invalid_argument("rms: empty series");
    double sum = 0.0;
    for (double v : series) sum += v * v;
    return std::sqrt(sum / static_cast<double>(series.size()));
}

double dynamic_tire_load(const VehicleState& s, double x_r, const SuspensionParams& p) {
    return p.k_t * (s.x_w - x_r);
}

namespace {

double peak_abs(const std::vector<double>& series) {
    double m = 0.0;
    for (double v : series) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

MetricsReport compute_metrics(const Trajectory& traj) {
    MetricsReport r;
    r.rms_ba = rms(traj.q);
    r.rms_sws = rms(traj.sws);
    r.rms_dtl = rms(traj.dtl);
    r.peak_ba = peak_abs(traj.q);
    r.peak_sws = peak_abs(traj.sws);
    r.peak_dtl = peak_abs(traj.dtl);
    return r;
}

SimResult simulate(const SimConfig& cfg, const SuspensionParams& sp, const BoucWenParams& bp,
                   const RoadProfile& road, const Controller& controller) {
    cfg.validate();
    sp.validate();
    bp.validate();
    if (const auto& bump = road.bump_profile(); bump && cfg.horizon <= bump->end_time())
        throw std::invalid_argument("SimConfig: horizon must extend past the bump support");

    const ForceMode force_mode = (cfg.mode == ControllerMode::passive_linear)
                                     ? ForceMode::passive_linear
                                     : ForceMode::mr_damper;
    const double dt = cfg.dt_physics;
    const long n_steps = std::llround(cfg.horizon / dt);
    const int n_sub = cfg.substeps_per_control();

    CoupledState state{};
    double v_cmd = 0.0;

    Trajectory traj;
    for (auto* col : {&traj.t, &traj.x_r, &traj.x_b, &traj.x_w, &traj.sws, &traj.q, &traj.f_mr,
                      &traj.v_cmd, &traj.u, &traj.z, &traj.dtl})
        col->reserve(static_cast<std::size_t>(n_steps) + 1);

    auto record = [&](double t, const CoupledState& s) {
        const Measurements m = measure(s, sp, bp, force_mode);
        traj.t.push_back(t);
        traj.x_r.push_back(road.elevation(t));
        traj.x_b.push_back(s.vehicle.x_b);
        traj.x_w.push_back(s.vehicle.x_w);
        traj.sws.push_back(m.sws);
        traj.q.push_back(m.q);
        traj.f_mr.push_back(m.force);
        traj.v_cmd.push_back(v_cmd);
        traj.u.push_back(s.damper.u);
        traj.z.push_back(s.damper.z);
        traj.dtl.push_back(dynamic_tire_load(s.vehicle, road.elevation(t), sp));
    };

    for (long i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        if (i % n_sub == 0)
            v_cmd = clamp_voltage(controller(t, measure(state, sp, bp, force_mode)));
        record(t, state);
        state = rk4_step(state, v_cmd, road, t, dt, sp, bp, force_mode);
        if (!state.finite()) {
            std::ostringstream msg;
            msg << "simulate: non-finite state at t=" << (t + dt) << " (x_b=" << state.vehicle.x_b
                << ", x_w=" << state.vehicle.x_w << ", v_b=" << state.vehicle.v_b
                << ", v_w=" << state.vehicle.v_w << ", z=" << state.damper.z << ")";
            throw std::runtime_error(msg.str());
        }
    }
    record(static_cast<double>(n_steps) * dt, state);

    MetricsReport metrics = compute_metrics(traj);
    return {std::move(traj), metrics};
}

std::vector<ComparisonRow> compare(const std::vector<NamedMetrics>& reports,
                                   const std::string& reference) {
    const NamedMetrics* ref = nullptr;
    for (const auto& r : reports)
        if (r.name == reference) ref = &r;
    if (!ref) throw std::invalid_argument("compare: reference '" + reference + "' not found");

    auto pct = [](double ref_value, double value) {
        return (ref_value - value) / ref_value * 100.0;
    };
    std::vector<ComparisonRow> rows;
    rows.reserve(reports.size());
    for (const auto& r : reports) {
        rows.push_back({r.name, pct(ref->metrics.rms_ba, r.metrics.rms_ba),
                        pct(ref->metrics.rms_sws, r.metrics.rms_sws),
                        pct(ref->metrics.rms_dtl, r.metrics.rms_dtl)});
    }
    return rows;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %18s %18s %18s\n", "controller",
                  "body accel", "working space", "tire load");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%-16s %17.2f%% %17.2f%% %17.2f%%\n", r.name.c_str(),
                      r.improvement_ba, r.improvement_sws, r.improvement_dtl);
        out << line;
    }
    return out.str();
}

std::string format_metrics(const MetricsReport& m) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-22s %12s %12s\n", "", "rms", "peak");
    out << line;
    std::snprintf(line, sizeof(line), "%-22s %12.6f %12.6f\n", "body accel [m/s^2]", m.rms_ba,
                  m.peak_ba);
    out << line;
    std::snprintf(line, sizeof(line), "%-22s %12.6f %12.6f\n", "working space [m]", m.rms_sws,
                  m.peak_sws);
    out << line;
    std::snprintf(line, sizeof(line), "%-22s %12.2f %12.2f\n", "tire load [N]", m.rms_dtl,
                  m.peak_dtl);
    out << line;
    return out.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "t,x_r,x_b,x_w,sws,q,f_mr,v_cmd,u,z,dtl\n";
    char buf[512];
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      traj.t[i], traj.x_r[i], traj.x_b[i], traj.x_w[i], traj.sws[i], traj.q[i],
                      traj.f_mr[i], traj.v_cmd[i], traj.u[i], traj.z[i], traj.dtl[i]);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);
    if (line != "t,x_r,x_b,x_w,sws,q,f_mr,v_cmd,u,z,dtl")
        throw std::runtime_error("unexpected trajectory header in " + path);
    Trajectory traj;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v[11];
        const char* p = line.c_str();
        char* end = nullptr;
        for (int k = 0; k < 11; ++k) {
            v[k] = std::strtod(p, &end);
            if (end == p) throw std::runtime_error("malformed trajectory row in " + path);
            p = (*end == ',') ? end + 1 : end;
        }
        traj.t.push_back(v[0]);
        traj.x_r.push_back(v[1]);
        traj.x_b.push_back(v[2]);
        traj.x_w.push_back(v[3]);
        traj.sws.push_back(v[4]);
        traj.q.push_back(v[5]);
        traj.f_mr.push_back(v[6]);
        traj.v_cmd.push_back(v[7]);
        traj.u.push_back(v[8]);
        traj.z.push_back(v[9]);
        traj.dtl.push_back(v[10]);
    }
    return traj;
}

namespace {

nlohmann::json metrics_to_json(const MetricsReport& m) {
    return {{"rms", {{"ba", m.rms_ba}, {"sws", m.rms_sws}, {"dtl", m.rms_dtl}}},
            {"peak", {{"ba", m.peak_ba}, {"sws", m.peak_sws}, {"dtl", m.peak_dtl}}}};
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
    MetricsReport m;
    m.rms_ba = j.at("rms").at("ba").get<double>();
    m.rms_sws = j.at("rms").at("sws").get<double>();
    m.rms_dtl = j.at("rms").at("dtl").get<double>();
    m.peak_ba = j.at("peak").at("ba").get<double>();
    m.peak_sws = j.at("peak").at("sws").get<double>();
    m.peak_dtl = j.at("peak").at("dtl").get<double>();
    return m;
}

}  // namespace

void write_metrics_json(const std::string& path, const NamedMetrics& report,
                        const std::string& config_echo_json) {
    nlohmann::json j = metrics_to_json(report.metrics);
    j["name"] = report.name;
    if (!config_echo_json.empty()) j["config"] = nlohmann::json::parse(config_echo_json);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

NamedMetrics read_metrics_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    return {j.at("name").get<std::string>(), metrics_from_json(j)};
}

void write_comparison_json(const std::string& path, const std::vector<ComparisonRow>& rows,
                           const std::string& reference) {
    nlohmann::json j;
    j["reference"] = reference;
    j["improvements"] = nlohmann::json::array();
    for (const auto& r : rows)
        j["improvements"].push_back({{"name", r.name},
                                     {"ba", r.improvement_ba},
                                     {"sws", r.improvement_sws},
                                     {"dtl", r.improvement_dtl}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace mrsusp
