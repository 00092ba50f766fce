#pragma once

#include <string>
#include <vector>

#include "mrsusp/config.hpp"
#include "mrsusp/td3.hpp"

namespace mrsusp {

/// Everything needed to reproduce a trained agent's behavior bit-exactly:
/// the full config echo, all six networks, optimizer moments, counters, the
/// RNG stream state, the per-episode return log, and the deterministic
/// evaluation metrics recorded at save time.
struct Checkpoint {
    LabConfig config;
    Td3Agent agent;
    std::vector<double> episode_returns;
    MetricsReport eval_metrics;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mrsusp
