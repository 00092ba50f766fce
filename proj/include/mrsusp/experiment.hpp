#pragma once

#include "mrsusp/baselines.hpp"
#include "mrsusp/checkpoint.hpp"
#include "mrsusp/config.hpp"

namespace mrsusp {

/// Trains an agent on the configured plant, runs the deterministic
/// evaluation, and assembles the checkpoint document.
Checkpoint run_training(const LabConfig& cfg);

/// Deterministic evaluation rollout of a stored agent under its own config.
SimResult evaluate_checkpoint(const Checkpoint& ckpt);

/// Simulation under cfg.sim.mode; `actor` is required for td3 mode.
SimResult simulate_configured(const LabConfig& cfg, const Mlp* actor = nullptr);

}  // namespace mrsusp
