#include "mrsusp/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mrsusp {

void PsoConfig::validate() const {
    if (swarm_size < 2) throw std::invalid_argument("PsoConfig: swarm_size must be >= 2");
    if (iterations < 1) throw std::invalid_argument("PsoConfig: iterations must be >= 1");
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("PsoConfig: bounds must be non-empty and congruent");
    for (std::size_t d = 0; d < lower.size(); ++d)
        if (!(lower[d] < upper[d]))
            throw std::invalid_argument("PsoConfig: lower bound must be < upper bound");
    if (!(inertia >= 0.0) || !(cognitive >= 0.0) || !(social >= 0.0))
        throw std::invalid_argument("PsoConfig: coefficients must be >= 0");
}

PsoResult pso_tune(const PsoObjective& objective, const PsoConfig& cfg) {
    cfg.validate();
    const std::size_t dim = cfg.dimensions();
    const int n = cfg.swarm_size;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double inf = std::numeric_limits<double>::infinity();

    auto cost_of = [&](const std::vector<double>& p) {
        const double c = objective(p);
        return std::isfinite(c) ? c : inf;
    };

    std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
    std::vector<std::vector<double>> vel(n, std::vector<double>(dim, 0.0));
    std::vector<std::vector<double>> best_pos(n);
    std::vector<double> best_cost(n, inf);
    std::vector<double> g_pos;
    double g_cost = inf;

    // iteration 1: evaluate the initial swarm
    for (int i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d)
            pos[i][d] = cfg.lower[d] + (cfg.upper[d] - cfg.lower[d]) * unit(rng);
        best_pos[i] = pos[i];
        best_cost[i] = cost_of(pos[i]);
        if (best_cost[i] < g_cost) {
            g_cost = best_cost[i];
            g_pos = pos[i];
        }
    }
    if (!std::isfinite(g_cost))
        throw std::runtime_error("pso_tune: objective non-finite over the entire initial swarm");

    PsoResult result;
    result.trace.reserve(static_cast<std::size_t>(cfg.iterations));
    result.trace.push_back(g_cost);

    for (int it = 1; it < cfg.iterations; ++it) {
        for (int i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                vel[i][d] = cfg.inertia * vel[i][d] +
                            cfg.cognitive * r1 * (best_pos[i][d] - pos[i][d]) +
                            cfg.social * r2 * (g_pos[d] - pos[i][d]);
                pos[i][d] = std::clamp(pos[i][d] + vel[i][d], cfg.lower[d], cfg.upper[d]);
            }
            const double c = cost_of(pos[i]);
            if (c < best_cost[i]) {
                best_cost[i] = c;
                best_pos[i] = pos[i];
            }
            if (c < g_cost) {
                g_cost = c;
                g_pos = pos[i];
            }
        }
        result.trace.push_back(g_cost);
    }

    result.best_position = g_pos;
    result.best_cost = g_cost;
    return result;
}

}  // namespace mrsusp
