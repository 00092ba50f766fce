#include "mrsusp/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace mrsusp {

namespace {

void check_dims(const Mlp& net, Eigen::Index input_cols) {
    if (net.weights.empty()) throw std::invalid_argument("Mlp: empty network");
    if (input_cols != net.input_size())
        throw std::invalid_argument("Mlp: input size mismatch");
}

void check_congruent(const Mlp& net, const GradientSet& g) {
    if (g.weights.size() != net.weights.size() || g.biases.size() != net.biases.size())
        throw std::invalid_argument("GradientSet: layer count mismatch");
    for (size_t l = 0; l < net.weights.size(); ++l) {
        if (g.weights[l].rows() != net.weights[l].rows() ||
            g.weights[l].cols() != net.weights[l].cols() ||
            g.biases[l].size() != net.biases[l].size())
            throw std::invalid_argument("GradientSet: shape mismatch");
    }
}

// Derivative of the output map through the pre-activation, elementwise.
Eigen::MatrixXd output_activation(const Mlp& net, const Eigen::MatrixXd& z) {
    if (net.output == OutputActivation::linear) return z;
    const double half_span = 0.5 * (net.out_high - net.out_low);
    const double mid = 0.5 * (net.out_high + net.out_low);
    return (z.array().tanh() * half_span + mid).matrix();
}

}  // namespace

long long Mlp::parameter_count() const {
    long long n = 0;
    for (size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
    return n;
}

Mlp make_mlp(const std::vector<int>& layer_dims, OutputActivation output, double out_low,
             double out_high, std::mt19937_64& rng) {
    if (layer_dims.size() < 2) throw std::invalid_argument("make_mlp: need at least two dims");
    for (int d : layer_dims)
        if (d <= 0) throw std::invalid_argument("make_mlp: dims must be positive");

    Mlp net;
    net.layer_dims = layer_dims;
    net.output = output;
    net.out_low = out_low;
    net.out_high = out_high;
    const size_t n_layers = layer_dims.size() - 1;
    for (size_t l = 0; l < n_layers; ++l) {
        const int in = layer_dims[l];
        const int out = layer_dims[l + 1];
        const bool final_layer = (l + 1 == n_layers);
        const double limit = final_layer ? 3e-3 : 1.0 / std::sqrt(static_cast<double>(in));
        std::uniform_real_distribution<double> dist(-limit, limit);
        Eigen::MatrixXd w(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) w(r, c) = dist(rng);
        Eigen::VectorXd b(out);
        for (int r = 0; r < out; ++r) b(r) = dist(rng);
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }
    return net;
}

AdamState make_adam_state(const Mlp& net) {
    AdamState s;
    for (size_t l = 0; l < net.weights.size(); ++l) {
        s.m_w.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
        s.v_w.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
        s.m_b.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
        s.v_b.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
    }
    return s;
}

GradientSet zero_gradients(const Mlp& net) {
    GradientSet g;
    for (size_t l = 0; l < net.weights.size(); ++l) {
        g.weights.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
        g.biases.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
    }
    return g;
}

ForwardTrace forward_trace(const Mlp& net, const Eigen::MatrixXd& inputs) {
    check_dims(net, inputs.cols());
    ForwardTrace trace;
    trace.input = inputs;
    const int n_layers = net.layer_count();
    trace.pre.reserve(n_layers);
    trace.post.reserve(n_layers);
    const Eigen::MatrixXd* a = &trace.input;
    for (int l = 0; l < n_layers; ++l) {
        Eigen::MatrixXd z = (*a) * net.weights[l].transpose();
        z.rowwise() += net.biases[l].transpose();
        if (l + 1 < n_layers) {
            trace.post.push_back(z.cwiseMax(0.0));
        } else {
            trace.post.push_back(output_activation(net, z));
        }
        trace.pre.push_back(std::move(z));
        a = &trace.post.back();
    }
    return trace;
}

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs) {
    check_dims(net, inputs.cols());
    const int n_layers = net.layer_count();
    Eigen::MatrixXd a = inputs;
    for (int l = 0; l < n_layers; ++l) {
        Eigen::MatrixXd z = a * net.weights[l].transpose();
        z.rowwise() += net.biases[l].transpose();
        a = (l + 1 < n_layers) ? z.cwiseMax(0.0).eval() : output_activation(net, z);
    }
    return a;
}

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input) {
    return forward_batch(net, input.transpose()).row(0).transpose();
}

BackwardResult backward(const Mlp& net, const ForwardTrace& trace,
                        const Eigen::MatrixXd& output_grad) {
    const int n_layers = net.layer_count();
    if (output_grad.rows() != trace.output().rows() ||
        output_grad.cols() != trace.output().cols())
        throw std::invalid_argument("backward: output_grad shape mismatch");

    BackwardResult res;
    res.grads.weights.resize(n_layers);
    res.grads.biases.resize(n_layers);

    Eigen::MatrixXd delta;  // gradient at the pre-activation of layer l
    if (net.output == OutputActivation::linear) {
        delta = output_grad;
    } else {
        const double half_span = 0.5 * (net.out_high - net.out_low);
        Eigen::ArrayXXd th = trace.pre.back().array().tanh();
        delta = (output_grad.array() * (1.0 - th.square()) * half_span).matrix();
    }
    for (int l = n_layers - 1; l >= 0; --l) {
        const Eigen::MatrixXd& a_prev = (l == 0) ? trace.input : trace.post[l - 1];
        res.grads.weights[l].noalias() = delta.transpose() * a_prev;
        res.grads.biases[l] = delta.colwise().sum().transpose();
        Eigen::MatrixXd da_prev = delta * net.weights[l];
        if (l == 0) {
            res.input_grad = std::move(da_prev);
        } else {
            // ReLU gate of the previous layer
            delta = (da_prev.array() * (trace.pre[l - 1].array() > 0.0).cast<double>()).matrix();
        }
    }
    return res;
}

BackwardResult backward(const Mlp& net, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad) {
    ForwardTrace trace = forward_trace(net, input.transpose());
    return backward(net, trace, output_grad.transpose());
}

void adam_step(Mlp& net, const GradientSet& grads, AdamState& opt, double lr,
               StepDirection direction) {
    if (!(lr > 0.0)) throw std::invalid_argument("adam_step: lr must be positive");
    check_congruent(net, grads);
    opt.step_count += 1;
    const double sign = (direction == StepDirection::ascent) ? -1.0 : 1.0;
    const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step_count));
    const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step_count));
    for (size_t l = 0; l < net.weights.size(); ++l) {
        const Eigen::ArrayXXd gw = sign * grads.weights[l].array();
        opt.m_w[l] = (opt.beta1 * opt.m_w[l].array() + (1.0 - opt.beta1) * gw).matrix();
        opt.v_w[l] = (opt.beta2 * opt.v_w[l].array() + (1.0 - opt.beta2) * gw.square()).matrix();
        net.weights[l].array() -=
            lr * (opt.m_w[l].array() / bc1) / ((opt.v_w[l].array() / bc2).sqrt() + opt.epsilon);

        const Eigen::ArrayXd gb = sign * grads.biases[l].array();
        opt.m_b[l] = (opt.beta1 * opt.m_b[l].array() + (1.0 - opt.beta1) * gb).matrix();
        opt.v_b[l] = (opt.beta2 * opt.v_b[l].array() + (1.0 - opt.beta2) * gb.square()).matrix();
        net.biases[l].array() -=
            lr * (opt.m_b[l].array() / bc1) / ((opt.v_b[l].array() / bc2).sqrt() + opt.epsilon);
    }
}

}  // namespace mrsusp
