#include "mrsusp/env.hpp"

#include <cmath>
#include <stdexcept>

namespace mrsusp {

int observation_size(ObservationMode mode) {
    return mode == ObservationMode::strict ? 1 : 3;
}

Eigen::VectorXd build_observation(const Measurements& m, ObservationMode mode) {
    if (mode == ObservationMode::strict) {
        Eigen::VectorXd obs(1);
        obs << m.q / kObsScaleAccel;
        return obs;
    }
    Eigen::VectorXd obs(3);
    obs << m.q / kObsScaleAccel, m.sws / kObsScaleSws, m.rel_vel / kObsScaleRelVel;
    return obs;
}

SuspensionEnv::SuspensionEnv(SimConfig sim, SuspensionParams suspension, BoucWenParams damper,
                             RoadProfile road)
    : sim_(sim), suspension_(suspension), damper_(damper), road_(std::move(road)) {
    sim_.validate();
    suspension_.validate();
    damper_.validate();
}

Eigen::VectorXd SuspensionEnv::reset() {
    state_ = CoupledState{};
    step_index_ = 0;
    return build_observation(measure(state_, suspension_, damper_, ForceMode::mr_damper),
                             sim_.observation);
}

StepResult SuspensionEnv::step(double action) {
    if (step_index_ >= max_episode_steps())
        throw std::logic_error("SuspensionEnv: step past the episode horizon; call reset()");
    const double v_cmd = clamp_voltage(action);
    const double dt = sim_.dt_physics;
    const int n_sub = sim_.substeps_per_control();
    const double t0 = time();

    double sum_q2 = 0.0;
    for (int j = 0; j < n_sub; ++j) {
        state_ = rk4_step(state_, v_cmd, road_, t0 + j * dt, dt, suspension_, damper_,
                          ForceMode::mr_damper);
        if (!state_.finite())
            throw std::runtime_error("SuspensionEnv: non-finite state during step");
        const Measurements m = measure(state_, suspension_, damper_, ForceMode::mr_damper);
        sum_q2 += m.q * m.q;
    }
    step_index_ += 1;

    const Measurements m = measure(state_, suspension_, damper_, ForceMode::mr_damper);
    StepResult res;
    res.observation = build_observation(m, sim_.observation);
    res.reward = -sim_.reward_k * sum_q2 / n_sub;
    res.terminal = false;  // the bump task has no failure state
    res.truncated = step_index_ >= max_episode_steps();
    return res;
}

int SuspensionEnv::observation_dim() const {
    return observation_size(sim_.observation);
}

int SuspensionEnv::max_episode_steps() const {
    return static_cast<int>(std::llround(sim_.horizon / sim_.control_period));
}

}  // namespace mrsusp
