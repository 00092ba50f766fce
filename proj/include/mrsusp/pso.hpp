#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mrsusp {

struct PsoConfig {
    int swarm_size = 30;
    int iterations = 60;      // first iteration evaluates the initial swarm
    double inertia = 0.729;
    double cognitive = 1.494;
    double social = 1.494;
    std::vector<double> lower{0.0, 0.0, 0.0};
    std::vector<double> upper{100.0, 200.0, 10.0};
    std::uint64_t seed = 1;

    std::size_t dimensions() const { return lower.size(); }
    void validate() const;
};

struct PsoResult {
    std::vector<double> best_position;
    double best_cost;
    std::vector<double> trace;  // global-best cost per iteration, non-increasing
};

using PsoObjective = std::function<double(const std::vector<double>&)>;

/// Global-best particle swarm over a bounded box; positions are clipped to
/// the bounds. Non-finite objective values are treated as +inf losses; if the
/// whole initial swarm evaluates non-finite the search aborts.
PsoResult pso_tune(const PsoObjective& objective, const PsoConfig& cfg);

}  // namespace mrsusp
