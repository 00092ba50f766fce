#include "mrsusp/experiment.hpp"

#include <stdexcept>

#include "mrsusp/env.hpp"

namespace mrsusp {

SimResult simulate_configured(const LabConfig& cfg, const Mlp* actor) {
    const RoadProfile road = cfg.road.make();
    Controller controller;
    switch (cfg.sim.mode) {
        case ControllerMode::uncontrolled:
        case ControllerMode::passive_linear:
            controller = make_uncontrolled_controller();
            break;
        case ControllerMode::pid:
            controller = make_pid_controller(cfg.pid, cfg.sim.control_period);
            break;
        case ControllerMode::td3:
            if (!actor)
                throw std::invalid_argument("simulate_configured: td3 mode needs an actor");
            controller = make_actor_controller(*actor, cfg.sim.observation);
            break;
    }
    return simulate(cfg.sim, cfg.suspension, cfg.bouc_wen, road, controller);
}

SimResult evaluate_checkpoint(const Checkpoint& ckpt) {
    LabConfig cfg = ckpt.config;
    cfg.sim.mode = ControllerMode::td3;
    return simulate_configured(cfg, &ckpt.agent.actor);
}

Checkpoint run_training(const LabConfig& cfg_in) {
    LabConfig cfg = cfg_in;
    cfg.sim.mode = ControllerMode::td3;
    cfg.validate();
    SuspensionEnv env(cfg.sim, cfg.suspension, cfg.bouc_wen, cfg.road.make());
    TrainResult tr = train(env, cfg.td3);

    Checkpoint ckpt{std::move(cfg), std::move(tr.agent), std::move(tr.episode_returns), {}};
    ckpt.eval_metrics = evaluate_checkpoint(ckpt).metrics;
    return ckpt;
}

}  // namespace mrsusp
