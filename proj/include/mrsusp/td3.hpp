#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mrsusp/env.hpp"
#include "mrsusp/nn.hpp"
#include "mrsusp/replay.hpp"

namespace mrsusp {

struct Td3Config {
    double gamma = 0.8;               // discount
    double actor_lr = 0.002;
    double critic_lr = 0.002;
    double tau = 0.006;               // target soft-replacement coefficient
    int policy_delay = 2;             // actor/target update every d critic updates
    double explore_sigma = 0.3;       // exploration noise std [V], decayed linearly
    double explore_sigma_final = 0.05;
    double target_sigma = 0.2;        // target-smoothing noise std [V]
    double noise_clip = 0.5;          // smoothing noise clip c [V]
    int batch_size = 100;
    int buffer_capacity = 200000;
    int warmup_steps = 120;           // uniformly random actions before learning
    int episodes = 300;
    int hidden1 = 400;
    int hidden2 = 300;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Six networks (twin critics + actor, with target copies), their optimizer
/// states, and the shared RNG stream that makes training reproducible.
struct Td3Agent {
    Td3Config cfg;
    int obs_dim = 0;
    Mlp actor, critic1, critic2;
    Mlp target_actor, target_critic1, target_critic2;
    AdamState actor_opt, critic1_opt, critic2_opt;
    std::mt19937_64 rng;
    long long env_steps = 0;
    long long critic_update_count = 0;
    long long actor_update_count = 0;
    double exploration_sigma = 0.0;  // current (decayed) value
};

Td3Agent make_agent(const Td3Config& cfg, int obs_dim);

/// Deterministic policy action, optionally perturbed by exploration noise;
/// always clamped to the actuator range.
double select_action(Td3Agent& agent, const Eigen::VectorXd& s, bool explore);

/// Target policy action with clipped smoothing noise (one row per state).
Eigen::VectorXd smoothed_target_actions(Td3Agent& agent, const Eigen::MatrixXd& s_next);
double smoothed_target_action(Td3Agent& agent, const Eigen::VectorXd& s_next);

/// Bootstrap targets y = r + gamma * min(Q1', Q2') on smoothed target
/// actions; terminal transitions use y = r.
Eigen::VectorXd compute_targets(Td3Agent& agent, const TransitionBatch& batch);

struct CriticLosses {
    double critic1;
    double critic2;
};

/// One Adam descent step on each critic's mean squared error against shared
/// targets.
CriticLosses update_critics(Td3Agent& agent, const TransitionBatch& batch);

/// One Adam ascent step on mean Q1(s, actor(s)); returns the objective value.
/// Critic parameters are left untouched.
double update_actor(Td3Agent& agent, const TransitionBatch& batch);

void soft_update_params(Mlp& target, const Mlp& main, double tau);
void soft_update(Td3Agent& agent);

struct TrainResult {
    Td3Agent agent;
    std::vector<double> episode_returns;
};

/// Full training loop: explore, store, sample, critic update every step,
/// delayed actor and target updates. Fully reproducible from cfg.seed.
TrainResult train(Env& env, const Td3Config& cfg);

}  // namespace mrsusp
