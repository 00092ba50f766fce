#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace mrsusp {

enum class OutputActivation {
    linear,
    bounded,  // tanh mapped affinely onto [out_low, out_high]
};

/// Fully connected network with rectified-linear hidden layers. Weights are
/// out x in; batched inputs are row-per-sample matrices.
struct Mlp {
    std::vector<int> layer_dims;
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
    OutputActivation output = OutputActivation::linear;
    double out_low = 0.0;
    double out_high = 1.0;

    int input_size() const { return layer_dims.front(); }
    int output_size() const { return layer_dims.back(); }
    int layer_count() const { return static_cast<int>(weights.size()); }
    long long parameter_count() const;
};

/// Per-parameter gradients, shape-congruent with an Mlp.
struct GradientSet {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

struct AdamState {
    std::vector<Eigen::MatrixXd> m_w, v_w;
    std::vector<Eigen::VectorXd> m_b, v_b;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long long step_count = 0;
};

enum class StepDirection { descent, ascent };

/// Fan-in uniform init for hidden layers; the final layer is drawn in
/// +-3e-3 so a bounded output starts mid-range.
Mlp make_mlp(const std::vector<int>& layer_dims, OutputActivation output, double out_low,
             double out_high, std::mt19937_64& rng);

AdamState make_adam_state(const Mlp& net);
GradientSet zero_gradients(const Mlp& net);

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input);
Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs);

/// Cached activations from a batched forward pass, consumed by backward().
struct ForwardTrace {
    Eigen::MatrixXd input;
    std::vector<Eigen::MatrixXd> pre;   // pre-activation per layer
    std::vector<Eigen::MatrixXd> post;  // activation per layer

    const Eigen::MatrixXd& output() const { return post.back(); }
};

ForwardTrace forward_trace(const Mlp& net, const Eigen::MatrixXd& inputs);

struct BackwardResult {
    GradientSet grads;
    Eigen::MatrixXd input_grad;
};

/// Reverse-mode gradients of sum(output .* output_grad) with respect to every
/// parameter and the input.
BackwardResult backward(const Mlp& net, const ForwardTrace& trace,
                        const Eigen::MatrixXd& output_grad);
BackwardResult backward(const Mlp& net, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad);

/// Adam with bias correction; `ascent` negates the gradient before applying.
void adam_step(Mlp& net, const GradientSet& grads, AdamState& opt, double lr,
               StepDirection direction);

}  // namespace mrsusp
