#pragma once

#include <string>
#include <vector>

#include "mrsusp/config.hpp"
#include "mrsusp/harness.hpp"
#include "mrsusp/nn.hpp"
#include "mrsusp/pid.hpp"
#include "mrsusp/pso.hpp"

namespace mrsusp {

/// The no-voltage comparison mode: always 0 V.
double uncontrolled_policy();

Controller make_uncontrolled_controller();
Controller make_pid_controller(const PidGains& gains, double control_period);
/// Evaluation adapter for a trained policy network (deterministic, no noise).
Controller make_actor_controller(Mlp actor, ObservationMode observation);

struct PidTuneResult {
    PidGains gains;
    double best_cost;            // RMS body acceleration at the tuned gains
    std::vector<double> trace;   // global-best cost per PSO iteration
    MetricsReport metrics;       // full bump metrics at the tuned gains
};

/// Swarm-tunes the PID gains against the RMS body acceleration of a full
/// bump simulation. Simulation failures count as infinite cost.
PidTuneResult tune_pid_on_bump(const LabConfig& cfg);

/// Tuned-gains document: gains, achieved metrics, swarm config echo, seed.
void write_gains_json(const std::string& path, const PidTuneResult& result,
                      const PsoConfig& pso);
PidGains read_gains_json(const std::string& path);

}  // namespace mrsusp
