#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mrsusp/checkpoint.hpp"
#include "mrsusp/experiment.hpp"

using namespace mrsusp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("rms basics") {
    CHECK(rms({-2.0, -2.0, -2.0}) == 2.0);
    CHECK(rms({1.0, 2.0, 2.0}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    std::vector<double> sine;
    for (int i = 0; i < 4000; ++i)
        sine.push_back(1.7 * std::sin(2.0 * std::numbers::pi * i / 400.0));
    CHECK(rms(sine) == doctest::Approx(1.7 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK_THROWS_AS(rms({}), std::invalid_argument);
}

TEST_CASE("dynamic tire load") {
    SuspensionParams p;
    VehicleState s;
    s.x_w = 0.01;
    CHECK(dynamic_tire_load(s, 0.01, p) == 0.0);
    s.x_w = 0.001;
    CHECK(dynamic_tire_load(s, 0.0, p) == doctest::Approx(200.0).epsilon(1e-12));
    // wheel above the road surface reads positive
    CHECK(dynamic_tire_load(s, 0.002, p) < 0.0);
}

TEST_CASE("sim config validation") {
    SimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.control_period = 0.21;  // not a multiple of horizon 2.5
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.dt_physics = 3e-4;  // control_period 0.25 is not an integer multiple
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.horizon = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("simulate rejects a horizon inside the bump support") {
    LabConfig cfg = default_config();
    cfg.sim.horizon = 1.0;
    cfg.sim.control_period = 0.25;
    CHECK_THROWS_AS(simulate_configured(cfg), std::invalid_argument);
}

TEST_CASE("uncontrolled bump reproduces the reference RMS values within 15%") {
    const SimResult res = simulate_configured(default_config());
    CHECK(res.metrics.rms_ba == doctest::Approx(1.5179).epsilon(0.15));
    CHECK(res.metrics.rms_sws == doctest::Approx(0.0267).epsilon(0.15));
    CHECK(res.metrics.rms_dtl == doctest::Approx(537.7).epsilon(0.15));
}

TEST_CASE("trajectories are deterministic and CSV round-trips are lossless") {
    LabConfig cfg = default_config();
    const SimResult a = simulate_configured(cfg);
    const SimResult b = simulate_configured(cfg);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
        CHECK(a.trajectory.q[i] == b.trajectory.q[i]);
        CHECK(a.trajectory.z[i] == b.trajectory.z[i]);
    }

    const std::string p1 = "/tmp/mrsusp_traj_a.csv", p2 = "/tmp/mrsusp_traj_b.csv";
    write_trajectory_csv(p1, a.trajectory);
    write_trajectory_csv(p2, b.trajectory);
    CHECK(slurp(p1) == slurp(p2));

    const Trajectory back = read_trajectory_csv(p1);
    REQUIRE(back.size() == a.trajectory.size());
    const MetricsReport again = compute_metrics(back);
    CHECK(std::abs(again.rms_ba - a.metrics.rms_ba) <= 1e-9 * a.metrics.rms_ba);
    CHECK(std::abs(again.rms_sws - a.metrics.rms_sws) <= 1e-9 * a.metrics.rms_sws);
    CHECK(std::abs(again.rms_dtl - a.metrics.rms_dtl) <= 1e-9 * a.metrics.rms_dtl);
}

TEST_CASE("zero road input settles to silence") {
    LabConfig cfg = default_config();
    cfg.road.kind = RoadSpec::Kind::flat;
    cfg.sim.horizon = 5.0;
    const SimResult res = simulate_configured(cfg);

    double max_q_late = 0.0;
    std::vector<double> dtl_tail;
    for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
        if (res.trajectory.t[i] > 4.0)
            max_q_late = std::max(max_q_late, std::abs(res.trajectory.q[i]));
        if (res.trajectory.t[i] >= 4.0) dtl_tail.push_back(res.trajectory.dtl[i]);
    }
    CHECK(max_q_late < 1e-6);
    CHECK(rms(dtl_tail) < 0.01);
}

TEST_CASE("swapping controllers leaves the sampling grid and road untouched") {
    LabConfig cfg = default_config();
    const SimResult uncontrolled = simulate_configured(cfg);
    cfg.sim.mode = ControllerMode::pid;
    cfg.pid = {5.0, 1.0, 0.1};
    const SimResult pid = simulate_configured(cfg);

    REQUIRE(uncontrolled.trajectory.size() == pid.trajectory.size());
    bool v_differs = false;
    for (std::size_t i = 0; i < pid.trajectory.size(); ++i) {
        CHECK(uncontrolled.trajectory.t[i] == pid.trajectory.t[i]);
        CHECK(uncontrolled.trajectory.x_r[i] == pid.trajectory.x_r[i]);
        if (uncontrolled.trajectory.v_cmd[i] != pid.trajectory.v_cmd[i]) v_differs = true;
    }
    CHECK(v_differs);
}

TEST_CASE("simulate aborts with a diagnostic when the state diverges") {
    LabConfig cfg = default_config();
    cfg.sim.dt_physics = 0.0125;  // far past the stiff stability limit
    cfg.sim.control_period = 0.25;
    CHECK_THROWS_WITH_AS(simulate_configured(cfg),
                         doctest::Contains("non-finite state"), std::runtime_error);
}

TEST_CASE("comparison table") {
    MetricsReport ref{1.5179, 0.0267, 537.7, 3.0, 0.05, 1200.0};
    MetricsReport controlled = ref;
    controlled.rms_sws = 0.0084;
    const auto rows = compare({{"uncontrolled", ref}, {"td3", controlled}}, "uncontrolled");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].improvement_ba == 0.0);
    CHECK(rows[0].improvement_sws == 0.0);
    CHECK(rows[1].improvement_sws == doctest::Approx(68.5).epsilon(0.0015));

    MetricsReport worse = ref;
    worse.rms_ba = 1.5 * ref.rms_ba;
    const auto rows2 = compare({{"ref", ref}, {"worse", worse}}, "ref");
    CHECK(rows2[1].improvement_ba == doctest::Approx(-50.0).epsilon(1e-12));

    CHECK_THROWS_AS(compare({{"a", ref}}, "missing"), std::invalid_argument);
}

TEST_CASE("metrics documents round-trip") {
    const NamedMetrics nm{"pid", {0.9, 0.01, 350.0, 2.0, 0.03, 800.0}};
    const std::string path = "/tmp/mrsusp_metrics.json";
    write_metrics_json(path, nm);
    const NamedMetrics back = read_metrics_json(path);
    CHECK(back.name == "pid");
    CHECK(back.metrics.rms_ba == 0.9);
    CHECK(back.metrics.peak_dtl == 800.0);
}

TEST_CASE("config defaults, round-trip, and strict key checking") {
    const LabConfig cfg = default_config();
    CHECK(cfg.suspension.m_b == 375.0);
    CHECK(cfg.bouc_wen.beta == 2059020.0);
    CHECK(cfg.road.bump.amplitude == 0.035);
    CHECK(cfg.td3.gamma == 0.8);
    CHECK(cfg.td3.tau == 0.006);

    const LabConfig round = config_from_json_text(config_to_json_text(cfg));
    CHECK(round.suspension.k_s == cfg.suspension.k_s);
    CHECK(round.bouc_wen.x0 == cfg.bouc_wen.x0);
    CHECK(round.sim.dt_physics == cfg.sim.dt_physics);
    CHECK(round.td3.buffer_capacity == cfg.td3.buffer_capacity);
    CHECK(round.pso.inertia == cfg.pso.inertia);

    CHECK(config_from_json_text("{}").suspension.m_b == 375.0);  // empty doc = defaults
    CHECK_THROWS_AS(config_from_json_text(R"({"typo": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"sim": {"dt": 0.001}})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"sim": {"mode": "sliding"}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"road": {"profile": "steps"}})"),
                    std::invalid_argument);
}

TEST_CASE("checkpoint round-trip restores bit-exact behavior") {
    LabConfig cfg = default_config();
    cfg.td3.hidden1 = 12;
    cfg.td3.hidden2 = 10;
    cfg.td3.batch_size = 8;
    cfg.td3.warmup_steps = 10;
    cfg.td3.episodes = 2;
    cfg.sim.control_period = 0.25;

    const Checkpoint ckpt = run_training(cfg);
    const std::string path = "/tmp/mrsusp_test.ckpt";
    save_checkpoint(path, ckpt);
    const Checkpoint back = load_checkpoint(path);

    for (size_t l = 0; l < ckpt.agent.actor.weights.size(); ++l) {
        CHECK((ckpt.agent.actor.weights[l] - back.agent.actor.weights[l]).cwiseAbs().maxCoeff() ==
              0.0);
        CHECK((ckpt.agent.critic1_opt.m_w[l] - back.agent.critic1_opt.m_w[l])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
    CHECK(back.agent.critic_update_count == ckpt.agent.critic_update_count);
    CHECK(back.episode_returns == ckpt.episode_returns);

    // rng stream restored verbatim
    std::mt19937_64 r1 = ckpt.agent.rng, r2 = back.agent.rng;
    for (int i = 0; i < 8; ++i) CHECK(r1() == r2());

    // stored evaluation metrics are reproduced exactly by a fresh rollout
    const SimResult again = evaluate_checkpoint(back);
    CHECK(again.metrics.rms_ba == ckpt.eval_metrics.rms_ba);
    CHECK(again.metrics.rms_sws == ckpt.eval_metrics.rms_sws);
    CHECK(again.metrics.rms_dtl == ckpt.eval_metrics.rms_dtl);

    CHECK_THROWS_AS(load_checkpoint("/tmp/does_not_exist.ckpt"), std::runtime_error);
}

TEST_CASE("environment rewards are the negated mean squared acceleration") {
    LabConfig cfg = default_config();
    cfg.sim.reward_k = 2.0;
    SuspensionEnv env(cfg.sim, cfg.suspension, cfg.bouc_wen, cfg.road.make());
    env.reset();
    const int n_sub = cfg.sim.substeps_per_control();

    // replicate the first control interval by stepping the plant directly
    CoupledState s{};
    const RoadProfile road = cfg.road.make();
    double sum_q2 = 0.0;
    for (int j = 0; j < n_sub; ++j) {
        s = rk4_step(s, 1.0, road, j * cfg.sim.dt_physics, cfg.sim.dt_physics, cfg.suspension,
                     cfg.bouc_wen);
        const Measurements m = measure(s, cfg.suspension, cfg.bouc_wen, ForceMode::mr_damper);
        sum_q2 += m.q * m.q;
    }
    const StepResult sr = env.step(1.0);
    CHECK(sr.reward == -2.0 * sum_q2 / n_sub);
    CHECK_FALSE(sr.terminal);
    CHECK_FALSE(sr.truncated);

    // strict observation mode exposes the acceleration alone
    CHECK(sr.observation.size() == 3);
    cfg.sim.observation = ObservationMode::strict;
    SuspensionEnv strict(cfg.sim, cfg.suspension, cfg.bouc_wen, cfg.road.make());
    CHECK(strict.reset().size() == 1);
    CHECK(strict.observation_dim() == 1);
}

TEST_CASE("environment truncates at the horizon and refuses to run past it") {
    LabConfig cfg = default_config();
    SuspensionEnv env(cfg.sim, cfg.suspension, cfg.bouc_wen, cfg.road.make());
    env.reset();
    StepResult last{};
    for (int i = 0; i < env.max_episode_steps(); ++i) last = env.step(0.5);
    CHECK(last.truncated);
    CHECK_FALSE(last.terminal);
    CHECK_THROWS_AS(env.step(0.5), std::logic_error);
}
