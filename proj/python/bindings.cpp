#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mrsusp/experiment.hpp"

namespace py = pybind11;
using namespace mrsusp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quarter-car semi-active suspension laboratory";

    py::enum_<ControllerMode>(m, "ControllerMode")
        .value("uncontrolled", ControllerMode::uncontrolled)
        .value("passive_linear", ControllerMode::passive_linear)
        .value("pid", ControllerMode::pid)
        .value("td3", ControllerMode::td3);

    py::enum_<ObservationMode>(m, "ObservationMode")
        .value("standard", ObservationMode::standard)
        .value("strict", ObservationMode::strict);

    py::class_<SuspensionParams>(m, "SuspensionParams")
        .def(py::init<>())
        .def_readwrite("m_b", &SuspensionParams::m_b)
        .def_readwrite("m_w", &SuspensionParams::m_w)
        .def_readwrite("k_s", &SuspensionParams::k_s)
        .def_readwrite("k_t", &SuspensionParams::k_t)
        .def_readwrite("c_s", &SuspensionParams::c_s);

    py::class_<BoucWenParams>(m, "BoucWenParams")
        .def(py::init<>())
        .def_readwrite("c0a", &BoucWenParams::c0a)
        .def_readwrite("c0b", &BoucWenParams::c0b)
        .def_readwrite("c1a", &BoucWenParams::c1a)
        .def_readwrite("c1b", &BoucWenParams::c1b)
        .def_readwrite("k0", &BoucWenParams::k0)
        .def_readwrite("k1", &BoucWenParams::k1)
        .def_readwrite("alpha_a", &BoucWenParams::alpha_a)
        .def_readwrite("alpha_b", &BoucWenParams::alpha_b)
        .def_readwrite("beta", &BoucWenParams::beta)
        .def_readwrite("gamma", &BoucWenParams::gamma)
        .def_readwrite("eta", &BoucWenParams::eta)
        .def_readwrite("a_bw", &BoucWenParams::a_bw)
        .def_readwrite("n", &BoucWenParams::n)
        .def_readwrite("x0", &BoucWenParams::x0)
        .def("z_bound", &BoucWenParams::z_bound);

    py::class_<BumpProfile>(m, "BumpProfile")
        .def(py::init<>())
        .def_readwrite("amplitude", &BumpProfile::amplitude)
        .def_readwrite("width", &BumpProfile::width)
        .def_readwrite("speed", &BumpProfile::speed)
        .def_readwrite("start_time", &BumpProfile::start_time)
        .def("angular_rate", &BumpProfile::angular_rate)
        .def("duration", &BumpProfile::duration)
        .def("end_time", &BumpProfile::end_time);

    py::class_<RoadSpec>(m, "RoadSpec")
        .def(py::init<>())
        .def_readwrite("bump", &RoadSpec::bump)
        .def_property(
            "profile",
            [](const RoadSpec& r) {
                return r.kind == RoadSpec::Kind::flat ? "flat" : "bump";
            },
            [](RoadSpec& r, const std::string& name) {
                if (name == "flat")
                    r.kind = RoadSpec::Kind::flat;
                else if (name == "bump")
                    r.kind = RoadSpec::Kind::bump;
                else
                    throw std::invalid_argument("profile must be 'flat' or 'bump'");
            });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dt_physics", &SimConfig::dt_physics)
        .def_readwrite("control_period", &SimConfig::control_period)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("mode", &SimConfig::mode)
        .def_readwrite("observation", &SimConfig::observation)
        .def_readwrite("reward_k", &SimConfig::reward_k)
        .def_readwrite("seed", &SimConfig::seed);

    py::class_<Td3Config>(m, "Td3Config")
        .def(py::init<>())
        .def_readwrite("gamma", &Td3Config::gamma)
        .def_readwrite("actor_lr", &Td3Config::actor_lr)
        .def_readwrite("critic_lr", &Td3Config::critic_lr)
        .def_readwrite("tau", &Td3Config::tau)
        .def_readwrite("policy_delay", &Td3Config::policy_delay)
        .def_readwrite("explore_sigma", &Td3Config::explore_sigma)
        .def_readwrite("explore_sigma_final", &Td3Config::explore_sigma_final)
        .def_readwrite("target_sigma", &Td3Config::target_sigma)
        .def_readwrite("noise_clip", &Td3Config::noise_clip)
        .def_readwrite("batch_size", &Td3Config::batch_size)
        .def_readwrite("buffer_capacity", &Td3Config::buffer_capacity)
        .def_readwrite("warmup_steps", &Td3Config::warmup_steps)
        .def_readwrite("episodes", &Td3Config::episodes)
        .def_readwrite("hidden1", &Td3Config::hidden1)
        .def_readwrite("hidden2", &Td3Config::hidden2)
        .def_readwrite("seed", &Td3Config::seed);

    py::class_<PsoConfig>(m, "PsoConfig")
        .def(py::init<>())
        .def_readwrite("swarm_size", &PsoConfig::swarm_size)
        .def_readwrite("iterations", &PsoConfig::iterations)
        .def_readwrite("inertia", &PsoConfig::inertia)
        .def_readwrite("cognitive", &PsoConfig::cognitive)
        .def_readwrite("social", &PsoConfig::social)
        .def_readwrite("lower", &PsoConfig::lower)
        .def_readwrite("upper", &PsoConfig::upper)
        .def_readwrite("seed", &PsoConfig::seed);

    py::class_<PidGains>(m, "PidGains")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("kp"), py::arg("ki"), py::arg("kd"))
        .def_readwrite("kp", &PidGains::kp)
        .def_readwrite("ki", &PidGains::ki)
        .def_readwrite("kd", &PidGains::kd);

    py::class_<LabConfig>(m, "LabConfig")
        .def(py::init<>())
        .def_readwrite("suspension", &LabConfig::suspension)
        .def_readwrite("damper", &LabConfig::bouc_wen)
        .def_readwrite("road", &LabConfig::road)
        .def_readwrite("sim", &LabConfig::sim)
        .def_readwrite("td3", &LabConfig::td3)
        .def_readwrite("pso", &LabConfig::pso)
        .def_readwrite("pid", &LabConfig::pid)
        .def("validate", &LabConfig::validate);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("rms_ba", &MetricsReport::rms_ba)
        .def_readonly("rms_sws", &MetricsReport::rms_sws)
        .def_readonly("rms_dtl", &MetricsReport::rms_dtl)
        .def_readonly("peak_ba", &MetricsReport::peak_ba)
        .def_readonly("peak_sws", &MetricsReport::peak_sws)
        .def_readonly("peak_dtl", &MetricsReport::peak_dtl)
        .def("__repr__", [](const MetricsReport& r) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "MetricsReport(rms_ba=%.6g, rms_sws=%.6g, rms_dtl=%.6g)", r.rms_ba,
                          r.rms_sws, r.rms_dtl);
            return std::string(buf);
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("t", &Trajectory::t)
        .def_readonly("x_r", &Trajectory::x_r)
        .def_readonly("x_b", &Trajectory::x_b)
        .def_readonly("x_w", &Trajectory::x_w)
        .def_readonly("sws", &Trajectory::sws)
        .def_readonly("q", &Trajectory::q)
        .def_readonly("f_mr", &Trajectory::f_mr)
        .def_readonly("v_cmd", &Trajectory::v_cmd)
        .def_readonly("u", &Trajectory::u)
        .def_readonly("z", &Trajectory::z)
        .def_readonly("dtl", &Trajectory::dtl)
        .def("__len__", &Trajectory::size);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("trajectory", &SimResult::trajectory)
        .def_readonly("metrics", &SimResult::metrics);

    py::class_<Checkpoint>(m, "Checkpoint")
        .def_readonly("config", &Checkpoint::config)
        .def_readonly("episode_returns", &Checkpoint::episode_returns)
        .def_readonly("eval_metrics", &Checkpoint::eval_metrics);

    py::class_<NamedMetrics>(m, "NamedMetrics")
        .def(py::init<std::string, MetricsReport>(), py::arg("name"), py::arg("metrics"))
        .def_readwrite("name", &NamedMetrics::name)
        .def_readonly("metrics", &NamedMetrics::metrics);

    py::class_<ComparisonRow>(m, "ComparisonRow")
        .def_readonly("name", &ComparisonRow::name)
        .def_readonly("improvement_ba", &ComparisonRow::improvement_ba)
        .def_readonly("improvement_sws", &ComparisonRow::improvement_sws)
        .def_readonly("improvement_dtl", &ComparisonRow::improvement_dtl);

    py::class_<PidTuneResult>(m, "PidTuneResult")
        .def_readonly("gains", &PidTuneResult::gains)
        .def_readonly("best_cost", &PidTuneResult::best_cost)
        .def_readonly("trace", &PidTuneResult::trace)
        .def_readonly("metrics", &PidTuneResult::metrics);

    py::class_<PsoResult>(m, "PsoResult")
        .def_readonly("best_position", &PsoResult::best_position)
        .def_readonly("best_cost", &PsoResult::best_cost)
        .def_readonly("trace", &PsoResult::trace);

    m.def("default_config", &default_config);
    m.def("load_config", &load_config, py::arg("path"));
    m.def("save_config", &save_config, py::arg("path"), py::arg("config"));
    m.def("config_from_json", &config_from_json_text, py::arg("text"));
    m.def("config_to_json", &config_to_json_text, py::arg("config"));

    m.def("elevation", py::overload_cast<const BumpProfile&, double>(&elevation),
          py::arg("profile"), py::arg("t"), "Road height of the half-cosine bump at time t");
    m.def(
        "body_acceleration",
        [](double x_b, double x_w, double force, const SuspensionParams& p) {
            return body_acceleration({x_b, x_w, 0.0, 0.0}, force, p);
        },
        py::arg("x_b"), py::arg("x_w"), py::arg("force"), py::arg("params"));
    m.def(
        "effective_coeffs",
        [](double u, const BoucWenParams& p) {
            const EffectiveCoeffs c = effective_coeffs(u, p);
            return py::make_tuple(c.alpha, c.c1, c.c0);
        },
        py::arg("u"), py::arg("params"));
    m.def("rms", &rms, py::arg("series"));

    m.def(
        "simulate",
        [](const LabConfig& cfg) { return simulate_configured(cfg, nullptr); }, py::arg("config"),
        "Closed-loop run under config.sim.mode (uncontrolled, passive-linear or pid)");
    m.def("train", &run_training, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Train the TD3 agent; returns a checkpoint with returns and evaluation metrics");
    m.def("evaluate", &evaluate_checkpoint, py::arg("checkpoint"),
          "Deterministic rollout of a trained agent under its stored config");
    m.def("save_checkpoint", &save_checkpoint, py::arg("path"), py::arg("checkpoint"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));
    m.def("tune_pid", &tune_pid_on_bump, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Swarm-tune PID gains against RMS body acceleration on the bump");
    m.def("pso_tune", &pso_tune, py::arg("objective"), py::arg("config"));
    m.def("compare", &compare, py::arg("reports"), py::arg("reference"),
          "Percentage improvements of each report versus the named reference");
    m.def("write_trajectory_csv", &write_trajectory_csv, py::arg("path"), py::arg("trajectory"));
    m.def("read_trajectory_csv", &read_trajectory_csv, py::arg("path"));
    m.def("write_metrics_json", &write_metrics_json, py::arg("path"), py::arg("report"),
          py::arg("config_echo_json") = std::string{});
    m.def("read_metrics_json", &read_metrics_json, py::arg("path"));
    m.def("write_comparison_json", &write_comparison_json, py::arg("path"), py::arg("rows"),
          py::arg("reference"));
}
