#include "mrsusp/td3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsusp {

void Td3Config::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("Td3Config: gamma in (0,1]");
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("Td3Config: tau in (0,1]");
    if (policy_delay < 1) throw std::invalid_argument("Td3Config: policy_delay >= 1");
    if (batch_size < 1) throw std::invalid_argument("Td3Config: batch_size >= 1");
    if (!(actor_lr > 0.0 && critic_lr > 0.0))
        throw std::invalid_argument("Td3Config: learning rates must be positive");
    if (explore_sigma < 0.0 || explore_sigma_final < 0.0 || target_sigma < 0.0)
        throw std::invalid_argument("Td3Config: noise sigmas must be >= 0");
    if (noise_clip < 0.0) throw std::invalid_argument("Td3Config: noise_clip >= 0");
    if (buffer_capacity < 1) throw std::invalid_argument("Td3Config: buffer_capacity >= 1");
    if (warmup_steps < 0) throw std::invalid_argument("Td3Config: warmup_steps >= 0");
    if (episodes < 0) throw std::invalid_argument("Td3Config: episodes >= 0");
    if (hidden1 < 1 || hidden2 < 1) throw std::invalid_argument("Td3Config: hidden sizes >= 1");
}

Td3Agent make_agent(const Td3Config& cfg, int obs_dim) {
    cfg.validate();
    if (obs_dim < 1) throw std::invalid_argument("make_agent: obs_dim >= 1");

    Td3Agent agent;
    agent.cfg = cfg;
    agent.obs_dim = obs_dim;
    agent.rng.seed(cfg.seed);
    agent.exploration_sigma = cfg.explore_sigma;

    const std::vector<int> critic_dims{obs_dim + 1, cfg.hidden1, cfg.hidden2, 1};
    const std::vector<int> actor_dims{obs_dim, cfg.hidden1, cfg.hidden2, 1};
    agent.critic1 = make_mlp(critic_dims, OutputActivation::linear, 0.0, 0.0, agent.rng);
    agent.critic2 = make_mlp(critic_dims, OutputActivation::linear, 0.0, 0.0, agent.rng);
    agent.actor =
        make_mlp(actor_dims, OutputActivation::bounded, kVoltageMin, kVoltageMax, agent.rng);
    agent.target_critic1 = agent.critic1;
    agent.target_critic2 = agent.critic2;
    agent.target_actor = agent.actor;
    agent.critic1_opt = make_adam_state(agent.critic1);
    agent.critic2_opt = make_adam_state(agent.critic2);
    agent.actor_opt = make_adam_state(agent.actor);
    return agent;
}

double select_action(Td3Agent& agent, const Eigen::VectorXd& s, bool explore) {
    double a = forward(agent.actor, s)(0);
    if (explore && agent.exploration_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, agent.exploration_sigma);
        a += noise(agent.rng);
    }
    return clamp_voltage(a);
}

Eigen::VectorXd smoothed_target_actions(Td3Agent& agent, const Eigen::MatrixXd& s_next) {
    Eigen::VectorXd a = forward_batch(agent.target_actor, s_next).col(0);
    if (agent.cfg.target_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, agent.cfg.target_sigma);
        const double c = agent.cfg.noise_clip;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a(i) += std::clamp(noise(agent.rng), -c, c);
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = clamp_voltage(a(i));
    return a;
}

double smoothed_target_action(Td3Agent& agent, const Eigen::VectorXd& s_next) {
    return smoothed_target_actions(agent, s_next.transpose())(0);
}

namespace {

Eigen::MatrixXd with_action_column(const Eigen::MatrixXd& s, const Eigen::VectorXd& a) {
    Eigen::MatrixXd x(s.rows(), s.cols() + 1);
    x.leftCols(s.cols()) = s;
    x.col(s.cols()) = a;
    return x;
}

}  // namespace

Eigen::VectorXd compute_targets(Td3Agent& agent, const TransitionBatch& batch) {
    if (batch.size() < 1) throw std::invalid_argument("compute_targets: empty batch");
    const Eigen::VectorXd a_next = smoothed_target_actions(agent, batch.s_next);
    const Eigen::MatrixXd x = with_action_column(batch.s_next, a_next);
    const Eigen::VectorXd q1 = forward_batch(agent.target_critic1, x).col(0);
    const Eigen::VectorXd q2 = forward_batch(agent.target_critic2, x).col(0);

    Eigen::VectorXd y(batch.size());
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
        y(i) = batch.r(i);
        if (!batch.terminal[static_cast<std::size_t>(i)])
            y(i) += agent.cfg.gamma * std::min(q1(i), q2(i));
    }
    return y;
}

CriticLosses update_critics(Td3Agent& agent, const TransitionBatch& batch) {
    const Eigen::VectorXd y = compute_targets(agent, batch);
    const Eigen::MatrixXd x = with_action_column(batch.s, batch.a);
    const double scale = 2.0 / static_cast<double>(batch.size());

    CriticLosses losses{};
    auto descend = [&](Mlp& critic, AdamState& opt) {
        const ForwardTrace trace = forward_trace(critic, x);
        const Eigen::VectorXd resid = trace.output().col(0) - y;
        const double loss = resid.squaredNorm() / static_cast<double>(batch.size());
        const Eigen::MatrixXd dy = scale * resid;
        BackwardResult back = backward(critic, trace, dy);
        adam_step(critic, back.grads, opt, agent.cfg.critic_lr, StepDirection::descent);
        return loss;
    };
    losses.critic1 = descend(agent.critic1, agent.critic1_opt);
    losses.critic2 = descend(agent.critic2, agent.critic2_opt);
    agent.critic_update_count += 1;
    return losses;
}

double update_actor(Td3Agent& agent, const TransitionBatch& batch) {
    const ForwardTrace actor_trace = forward_trace(agent.actor, batch.s);
    const Eigen::VectorXd a = actor_trace.output().col(0);
    const Eigen::MatrixXd x = with_action_column(batch.s, a);
    const ForwardTrace critic_trace = forward_trace(agent.critic1, x);
    const double objective =
        critic_trace.output().col(0).mean();

    const Eigen::MatrixXd dq =
        Eigen::MatrixXd::Constant(batch.size(), 1, 1.0 / static_cast<double>(batch.size()));
    // Critic gradients are computed but discarded; only the action gradient
    // flows back into the actor.
    const BackwardResult critic_back = backward(agent.critic1, critic_trace, dq);
    const Eigen::MatrixXd da = critic_back.input_grad.rightCols(1);
    const BackwardResult actor_back = backward(agent.actor, actor_trace, da);
    adam_step(agent.actor, actor_back.grads, agent.actor_opt, agent.cfg.actor_lr,
              StepDirection::ascent);
    agent.actor_update_count += 1;
    return objective;
}

void soft_update_params(Mlp& target, const Mlp& main, double tau) {
    if (target.layer_dims != main.layer_dims)
        throw std::invalid_argument("soft_update_params: shape mismatch");
    for (size_t l = 0; l < main.weights.size(); ++l) {
        target.weights[l] = tau * main.weights[l] + (1.0 - tau) * target.weights[l];
        target.biases[l] = tau * main.biases[l] + (1.0 - tau) * target.biases[l];
    }
}

void soft_update(Td3Agent& agent) {
    soft_update_params(agent.target_critic1, agent.critic1, agent.cfg.tau);
    soft_update_params(agent.target_critic2, agent.critic2, agent.cfg.tau);
    soft_update_params(agent.target_actor, agent.actor, agent.cfg.tau);
}

TrainResult train(Env& env, const Td3Config& cfg) {
    cfg.validate();
    Td3Agent agent = make_agent(cfg, env.observation_dim());
    ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity));
    std::vector<double> episode_returns;
    episode_returns.reserve(static_cast<std::size_t>(cfg.episodes));

    std::uniform_real_distribution<double> random_action(kVoltageMin, kVoltageMax);

    for (int ep = 0; ep < cfg.episodes; ++ep) {
        agent.exploration_sigma =
            (cfg.episodes > 1)
                ? cfg.explore_sigma + (cfg.explore_sigma_final - cfg.explore_sigma) *
                                          static_cast<double>(ep) /
                                          static_cast<double>(cfg.episodes - 1)
                : cfg.explore_sigma;

        Eigen::VectorXd s = env.reset();
        double ep_return = 0.0;
        for (int step = 0; step < env.max_episode_steps(); ++step) {
            const double a = (agent.env_steps < cfg.warmup_steps)
                                 ? random_action(agent.rng)
                                 : select_action(agent, s, /*explore=*/true);
            StepResult sr = env.step(a);
            buffer.push({s, a, sr.reward, sr.observation, sr.terminal});
            ep_return += sr.reward;
            agent.env_steps += 1;
            s = std::move(sr.observation);

            if (agent.env_steps >= cfg.warmup_steps &&
                buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                TransitionBatch batch = buffer.sample(cfg.batch_size, agent.rng);
                update_critics(agent, batch);
                if (agent.critic_update_count % cfg.policy_delay == 0) {
                    update_actor(agent, batch);
                    soft_update(agent);
                }
            }
            if (sr.terminal || sr.truncated) break;
        }
        episode_returns.push_back(ep_return);
    }
    return {std::move(agent), std::move(episode_returns)};
}

}  // namespace mrsusp
