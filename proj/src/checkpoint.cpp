#include "mrsusp/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mrsusp {

using nlohmann::json;

namespace {

json mlp_to_json(const Mlp& net) {
    json j;
    j["layer_dims"] = net.layer_dims;
    j["output"] = net.output == OutputActivation::bounded ? "bounded" : "linear";
    j["out_low"] = net.out_low;
    j["out_high"] = net.out_high;
    json weights = json::array();
    json biases = json::array();
    for (size_t l = 0; l < net.weights.size(); ++l) {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(net.weights[l].size()));
        for (Eigen::Index r = 0; r < net.weights[l].rows(); ++r)
            for (Eigen::Index c = 0; c < net.weights[l].cols(); ++c)
                w.push_back(net.weights[l](r, c));
        weights.push_back(std::move(w));
        biases.push_back(std::vector<double>(net.biases[l].data(),
                                             net.biases[l].data() + net.biases[l].size()));
    }
    j["weights"] = std::move(weights);
    j["biases"] = std::move(biases);
    return j;
}

Mlp mlp_from_json(const json& j) {
    Mlp net;
    net.layer_dims = j.at("layer_dims").get<std::vector<int>>();
    net.output = j.at("output").get<std::string>() == "bounded" ? OutputActivation::bounded
                                                                : OutputActivation::linear;
    net.out_low = j.at("out_low").get<double>();
    net.out_high = j.at("out_high").get<double>();
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (weights.size() + 1 != net.layer_dims.size())
        throw std::runtime_error("checkpoint: layer count mismatch");
    for (size_t l = 0; l + 1 < net.layer_dims.size(); ++l) {
        const int out = net.layer_dims[l + 1];
        const int in = net.layer_dims[l];
        const auto w = weights.at(l).get<std::vector<double>>();
        const auto b = biases.at(l).get<std::vector<double>>();
        if (w.size() != static_cast<std::size_t>(out) * static_cast<std::size_t>(in) ||
            b.size() != static_cast<std::size_t>(out))
            throw std::runtime_error("checkpoint: parameter shape mismatch");
        Eigen::MatrixXd wm(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) wm(r, c) = w[static_cast<std::size_t>(r) * in + c];
        net.weights.push_back(std::move(wm));
        net.biases.push_back(Eigen::Map<const Eigen::VectorXd>(b.data(), out));
    }
    return net;
}

json adam_to_json(const AdamState& s) {
    json j;
    j["beta1"] = s.beta1;
    j["beta2"] = s.beta2;
    j["epsilon"] = s.epsilon;
    j["step_count"] = s.step_count;
    auto dump_mats = [](const std::vector<Eigen::MatrixXd>& mats) {
        json arr = json::array();
        for (const auto& m : mats) {
            std::vector<double> flat;
            flat.reserve(static_cast<std::size_t>(m.size()));
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
            arr.push_back(std::move(flat));
        }
        return arr;
    };
    auto dump_vecs = [](const std::vector<Eigen::VectorXd>& vecs) {
        json arr = json::array();
        for (const auto& v : vecs)
            arr.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        return arr;
    };
    j["m_w"] = dump_mats(s.m_w);
    j["v_w"] = dump_mats(s.v_w);
    j["m_b"] = dump_vecs(s.m_b);
    j["v_b"] = dump_vecs(s.v_b);
    return j;
}

AdamState adam_from_json(const json& j, const Mlp& net) {
    AdamState s = make_adam_state(net);
    s.beta1 = j.at("beta1").get<double>();
    s.beta2 = j.at("beta2").get<double>();
    s.epsilon = j.at("epsilon").get<double>();
    s.step_count = j.at("step_count").get<long long>();
    auto load_mats = [&](const json& arr, std::vector<Eigen::MatrixXd>& mats) {
        for (size_t l = 0; l < mats.size(); ++l) {
            const auto flat = arr.at(l).get<std::vector<double>>();
            if (flat.size() != static_cast<std::size_t>(mats[l].size()))
                throw std::runtime_error("checkpoint: optimizer shape mismatch");
            for (Eigen::Index r = 0; r < mats[l].rows(); ++r)
                for (Eigen::Index c = 0; c < mats[l].cols(); ++c)
                    mats[l](r, c) = flat[static_cast<std::size_t>(r) * mats[l].cols() + c];
        }
    };
    auto load_vecs = [&](const json& arr, std::vector<Eigen::VectorXd>& vecs) {
        for (size_t l = 0; l < vecs.size(); ++l) {
            const auto flat = arr.at(l).get<std::vector<double>>();
            if (flat.size() != static_cast<std::size_t>(vecs[l].size()))
                throw std::runtime_error("checkpoint: optimizer shape mismatch");
            vecs[l] = Eigen::Map<const Eigen::VectorXd>(flat.data(),
                                                        static_cast<Eigen::Index>(flat.size()));
        }
    };
    load_mats(j.at("m_w"), s.m_w);
    load_mats(j.at("v_w"), s.v_w);
    load_vecs(j.at("m_b"), s.m_b);
    load_vecs(j.at("v_b"), s.v_b);
    return s;
}

json metrics_to_json(const MetricsReport& m) {
    return {{"rms", {{"ba", m.rms_ba}, {"sws", m.rms_sws}, {"dtl", m.rms_dtl}}},
            {"peak", {{"ba", m.peak_ba}, {"sws", m.peak_sws}, {"dtl", m.peak_dtl}}}};
}

MetricsReport metrics_from_json(const json& j) {
    MetricsReport m;
    m.rms_ba = j.at("rms").at("ba").get<double>();
    m.rms_sws = j.at("rms").at("sws").get<double>();
    m.rms_dtl = j.at("rms").at("dtl").get<double>();
    m.peak_ba = j.at("peak").at("ba").get<double>();
    m.peak_sws = j.at("peak").at("sws").get<double>();
    m.peak_dtl = j.at("peak").at("dtl").get<double>();
    return m;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    json j;
    j["format"] = "mrsusp-checkpoint-v1";
    j["config"] = json::parse(config_to_json_text(ckpt.config));
    j["episode_returns"] = ckpt.episode_returns;
    j["eval_metrics"] = metrics_to_json(ckpt.eval_metrics);

    const Td3Agent& a = ckpt.agent;
    j["agent"]["obs_dim"] = a.obs_dim;
    j["agent"]["env_steps"] = a.env_steps;
    j["agent"]["critic_update_count"] = a.critic_update_count;
    j["agent"]["actor_update_count"] = a.actor_update_count;
    j["agent"]["exploration_sigma"] = a.exploration_sigma;
    std::ostringstream rng_text;
    rng_text << a.rng;
    j["agent"]["rng"] = rng_text.str();
    j["agent"]["actor"] = mlp_to_json(a.actor);
    j["agent"]["critic1"] = mlp_to_json(a.critic1);
    j["agent"]["critic2"] = mlp_to_json(a.critic2);
    j["agent"]["target_actor"] = mlp_to_json(a.target_actor);
    j["agent"]["target_critic1"] = mlp_to_json(a.target_critic1);
    j["agent"]["target_critic2"] = mlp_to_json(a.target_critic2);
    j["agent"]["actor_opt"] = adam_to_json(a.actor_opt);
    j["agent"]["critic1_opt"] = adam_to_json(a.critic1_opt);
    j["agent"]["critic2_opt"] = adam_to_json(a.critic2_opt);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump() << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j = json::parse(in);
    if (j.value("format", "") != "mrsusp-checkpoint-v1")
        throw std::runtime_error("unrecognized checkpoint format in " + path);

    Checkpoint ckpt;
    ckpt.config = config_from_json_text(j.at("config").dump());
    ckpt.episode_returns = j.at("episode_returns").get<std::vector<double>>();
    ckpt.eval_metrics = metrics_from_json(j.at("eval_metrics"));

    const json& ja = j.at("agent");
    Td3Agent& a = ckpt.agent;
    a.cfg = ckpt.config.td3;
    a.obs_dim = ja.at("obs_dim").get<int>();
    a.env_steps = ja.at("env_steps").get<long long>();
    a.critic_update_count = ja.at("critic_update_count").get<long long>();
    a.actor_update_count = ja.at("actor_update_count").get<long long>();
    a.exploration_sigma = ja.at("exploration_sigma").get<double>();
    std::istringstream rng_text(ja.at("rng").get<std::string>());
    rng_text >> a.rng;
    a.actor = mlp_from_json(ja.at("actor"));
    a.critic1 = mlp_from_json(ja.at("critic1"));
    a.critic2 = mlp_from_json(ja.at("critic2"));
    a.target_actor = mlp_from_json(ja.at("target_actor"));
    a.target_critic1 = mlp_from_json(ja.at("target_critic1"));
    a.target_critic2 = mlp_from_json(ja.at("target_critic2"));
    a.actor_opt = adam_from_json(ja.at("actor_opt"), a.actor);
    a.critic1_opt = adam_from_json(ja.at("critic1_opt"), a.critic1);
    a.critic2_opt = adam_from_json(ja.at("critic2_opt"), a.critic2);
    return ckpt;
}

}  // namespace mrsusp
