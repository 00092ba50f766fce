#pragma once

#include <Eigen/Dense>

#include "mrsusp/harness.hpp"

namespace mrsusp {

// Fixed observation scales (acceleration, working space, relative velocity).
inline constexpr double kObsScaleAccel = 10.0;   // [m/s^2]
inline constexpr double kObsScaleSws = 0.05;     // [m]
inline constexpr double kObsScaleRelVel = 1.0;   // [m/s]

int observation_size(ObservationMode mode);
Eigen::VectorXd build_observation(const Measurements& m, ObservationMode mode);

struct StepResult {
    Eigen::VectorXd observation;
    double reward;
    bool terminal;   // MDP termination (never set by the time limit)
    bool truncated;  // episode ended by the horizon
};

class Env {
  public:
    virtual ~Env() = default;
    virtual Eigen::VectorXd reset() = 0;
    virtual StepResult step(double action) = 0;
    virtual int observation_dim() const = 0;
    virtual int max_episode_steps() const = 0;
};

/// Quarter-car episode: one env step = one control period of the plant with
/// the commanded voltage held; reward is -k * mean(q^2) over the substeps.
class SuspensionEnv : public Env {
  public:
    SuspensionEnv(SimConfig sim, SuspensionParams suspension, BoucWenParams damper,
                  RoadProfile road);

    Eigen::VectorXd reset() override;
    StepResult step(double action) override;
    int observation_dim() const override;
    int max_episode_steps() const override;

    double time() const { return static_cast<double>(step_index_) * sim_.control_period; }
    const CoupledState& state() const { return state_; }
    const SimConfig& sim_config() const { return sim_; }

  private:
    SimConfig sim_;
    SuspensionParams suspension_;
    BoucWenParams damper_;
    RoadProfile road_;
    CoupledState state_{};
    long step_index_ = 0;
};

}  // namespace mrsusp
