#include "mrsusp/cli.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrsusp/experiment.hpp"

namespace mrsusp {

namespace {

struct CommonOptions {
    std::string config_path;
    std::string mode_name;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool strict_observation = false;
    int episodes = -1;
};

LabConfig resolve_config(const CommonOptions& opt) {
    LabConfig cfg = opt.config_path.empty() ? default_config() : load_config(opt.config_path);
    if (!opt.mode_name.empty()) cfg.sim.mode = controller_mode_from_string(opt.mode_name);
    if (opt.seed_given) {
        cfg.sim.seed = opt.seed;
        cfg.td3.seed = opt.seed;
        cfg.pso.seed = opt.seed;
    }
    if (opt.strict_observation) cfg.sim.observation = ObservationMode::strict;
    if (opt.episodes >= 0) cfg.td3.episodes = opt.episodes;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_mode) {
    cmd->add_option("--config", opt.config_path, "JSON config file (defaults when omitted)");
    cmd->add_option("--seed", opt.seed, "override every seed in the config")
        ->each([&opt](const std::string&) { opt.seed_given = true; });
    cmd->add_flag("--strict-observation", opt.strict_observation,
                  "agent observes body acceleration only");
    if (with_mode)
        cmd->add_option("--mode", opt.mode_name,
                        "controller: uncontrolled | passive-linear | pid | td3");
}

void write_returns_csv(const std::string& path, const std::vector<double>& returns) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs("episode,return\n", f);
    for (std::size_t i = 0; i < returns.size(); ++i)
        std::fprintf(f, "%zu,%.17g\n", i, returns[i]);
    std::fclose(f);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Quarter-car semi-active suspension laboratory"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string out_path, metrics_path, checkpoint_path, gains_path, run_name, reference;
    std::vector<std::string> run_files;

    auto* sim_cmd = app.add_subcommand("simulate", "Run one closed-loop bump simulation");
    add_common(sim_cmd, opt, /*with_mode=*/true);
    sim_cmd->add_option("--out", out_path, "write the trajectory CSV here");
    sim_cmd->add_option("--metrics", metrics_path, "write the metrics report JSON here");
    sim_cmd->add_option("--name", run_name, "run label used in metrics files");
    sim_cmd->add_option("--checkpoint", checkpoint_path, "trained agent (td3 mode)");
    sim_cmd->add_option("--gains", gains_path, "tuned PID gains JSON (pid mode)");

    auto* train_cmd = app.add_subcommand("train", "Train the TD3 agent on the bump task");
    add_common(train_cmd, opt, /*with_mode=*/false);
    train_cmd->add_option("--episodes", opt.episodes, "override the training episode count");
    train_cmd->add_option("--checkpoint", checkpoint_path, "write the trained agent here")
        ->required();
    train_cmd->add_option("--out", out_path, "write per-episode returns CSV here");

    auto* eval_cmd = app.add_subcommand("evaluate", "Deterministic rollout of a trained agent");
    eval_cmd->add_option("--checkpoint", checkpoint_path, "trained agent")->required();
    eval_cmd->add_option("--out", out_path, "write the trajectory CSV here");
    eval_cmd->add_option("--metrics", metrics_path, "write the metrics report JSON here");
    eval_cmd->add_option("--name", run_name, "run label used in metrics files");

    auto* tune_cmd = app.add_subcommand("tune-pid", "Swarm-tune PID gains on the bump task");
    add_common(tune_cmd, opt, /*with_mode=*/false);
    tune_cmd->add_option("--out", gains_path, "write the tuned gains JSON here");

    auto* cmp_cmd = app.add_subcommand("compare", "Percentage improvements versus a reference");
    cmp_cmd->add_option("--runs", run_files, "metrics JSON files from simulate/evaluate")
        ->required()
        ->expected(-1);
    cmp_cmd->add_option("--reference", reference, "name of the reference run")->required();
    cmp_cmd->add_option("--out", out_path, "also write the comparison table as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim_cmd->parsed()) {
            LabConfig cfg = resolve_config(opt);
            const Mlp* actor = nullptr;
            Checkpoint ckpt;
            if (cfg.sim.mode == ControllerMode::td3) {
                if (checkpoint_path.empty())
                    throw std::runtime_error("simulate: td3 mode needs --checkpoint");
                ckpt = load_checkpoint(checkpoint_path);
                cfg.sim.observation = ckpt.config.sim.observation;
                actor = &ckpt.agent.actor;
            }
            if (cfg.sim.mode == ControllerMode::pid && !gains_path.empty())
                cfg.pid = read_gains_json(gains_path);
            SimResult res = simulate_configured(cfg, actor);
            std::cout << format_metrics(res.metrics);
            if (!out_path.empty()) write_trajectory_csv(out_path, res.trajectory);
            if (!metrics_path.empty())
                write_metrics_json(metrics_path,
                                   {run_name.empty() ? to_string(cfg.sim.mode) : run_name,
                                    res.metrics},
                                   config_to_json_text(cfg));
        } else if (train_cmd->parsed()) {
            LabConfig cfg = resolve_config(opt);
            Checkpoint ckpt = run_training(cfg);
            std::cout << "trained " << ckpt.episode_returns.size() << " episodes\n";
            if (!ckpt.episode_returns.empty())
                std::cout << "first return " << ckpt.episode_returns.front() << ", last return "
                          << ckpt.episode_returns.back() << "\n";
            std::cout << format_metrics(ckpt.eval_metrics);
            save_checkpoint(checkpoint_path, ckpt);
            if (!out_path.empty()) write_returns_csv(out_path, ckpt.episode_returns);
        } else if (eval_cmd->parsed()) {
            Checkpoint ckpt = load_checkpoint(checkpoint_path);
            SimResult res = evaluate_checkpoint(ckpt);
            std::cout << format_metrics(res.metrics);
            if (!out_path.empty()) write_trajectory_csv(out_path, res.trajectory);
            if (!metrics_path.empty())
                write_metrics_json(metrics_path,
                                   {run_name.empty() ? std::string("td3") : run_name,
                                    res.metrics},
                                   config_to_json_text(ckpt.config));
        } else if (tune_cmd->parsed()) {
            LabConfig cfg = resolve_config(opt);
            PidTuneResult result = tune_pid_on_bump(cfg);
            std::printf("tuned gains: kp=%.6g ki=%.6g kd=%.6g (rms body accel %.6f)\n",
                        result.gains.kp, result.gains.ki, result.gains.kd, result.best_cost);
            std::cout << format_metrics(result.metrics);
            if (!gains_path.empty()) write_gains_json(gains_path, result, cfg.pso);
        } else if (cmp_cmd->parsed()) {
            std::vector<NamedMetrics> reports;
            reports.reserve(run_files.size());
            for (const auto& f : run_files) reports.push_back(read_metrics_json(f));
            const auto rows = compare(reports, reference);
            std::cout << format_comparison(rows);
            if (!out_path.empty()) write_comparison_json(out_path, rows, reference);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mrsusp
