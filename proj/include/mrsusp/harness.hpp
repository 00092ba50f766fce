#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mrsusp/dynamics.hpp"

namespace mrsusp {

enum class ControllerMode { uncontrolled, passive_linear, pid, td3 };
enum class ObservationMode { standard, strict };  // strict: body acceleration only

std::string to_string(ControllerMode mode);
ControllerMode controller_mode_from_string(const std::string& name);

struct SimConfig {
    double dt_physics = 2.5e-4;    // [s]
    double control_period = 0.25;  // [s]; integer multiple of dt_physics
    double horizon = 2.5;          // [s]; integer multiple of control_period
    ControllerMode mode = ControllerMode::uncontrolled;
    ObservationMode observation = ObservationMode::standard;
    double reward_k = 1.0;
    std::uint64_t seed = 1;

    int substeps_per_control() const;
    void validate() const;
};

/// Signals a controller reads at a control instant.
struct Measurements {
    double q;        // body acceleration [m/s^2]
    double sws;      // suspension working space x_b - x_w [m]
    double rel_vel;  // v_b - v_w [m/s]
    double force;    // suspension force currently transmitted [N]
};

Measurements measure(const CoupledState& s, const SuspensionParams& sp, const BoucWenParams& bp,
                     ForceMode mode);

using Controller = std::function<double(double t, const Measurements& m)>;

/// Uniformly sampled signals, one entry per physics step (t = 0 .. horizon).
struct Trajectory {
    std::vector<double> t, x_r, x_b, x_w, sws, q, f_mr, v_cmd, u, z, dtl;

    std::size_t size() const { return t.size(); }
};

struct MetricsReport {
    double rms_ba = 0.0;
    double rms_sws = 0.0;
    double rms_dtl = 0.0;
    double peak_ba = 0.0;
    double peak_sws = 0.0;
    double peak_dtl = 0.0;
};

/// Root mean square over all samples. Throws std::invalid_argument on an
/// empty series.
double rms(const std::vector<double>& series);

/// Tire force variation k_t * (x_w - x_r); positive when the wheel sits above
/// the road surface.
double dynamic_tire_load(const VehicleState& s, double x_r, const SuspensionParams& p);

MetricsReport compute_metrics(const Trajectory& traj);

struct SimResult {
    Trajectory trajectory;
    MetricsReport metrics;
};

/// Closed-loop run over [0, horizon]: the controller is queried once per
/// control period, its clamped voltage command is held while the plant
/// integrates at dt_physics. Throws on invalid config and aborts with
/// diagnostic when the state leaves the finite range.
SimResult simulate(const SimConfig& cfg, const SuspensionParams& sp, const BoucWenParams& bp,
                   const RoadProfile& road, const Controller& controller);

// -- comparison (reference-relative percentage improvements) --

struct NamedMetrics {
    std::string name;
    MetricsReport metrics;
};

struct ComparisonRow {
    std::string name;
    double improvement_ba;   // (ref - value)/ref * 100
    double improvement_sws;
    double improvement_dtl;
};

std::vector<ComparisonRow> compare(const std::vector<NamedMetrics>& reports,
                                   const std::string& reference);
std::string format_comparison(const std::vector<ComparisonRow>& rows);
std::string format_metrics(const MetricsReport& m);

// -- artifacts --

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// Metrics document: name + rms/peak triplets, optionally a config echo
/// (JSON text as produced by config_to_json_text).
void write_metrics_json(const std::string& path, const NamedMetrics& report,
                        const std::string& config_echo_json = {});
NamedMetrics read_metrics_json(const std::string& path);

void write_comparison_json(const std::string& path, const std::vector<ComparisonRow>& rows,
                           const std::string& reference);

}  // namespace mrsusp
