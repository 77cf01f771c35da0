#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vnesim/run.hpp"

namespace {

vnesim::RunConfig load_config(const std::string& config_path,
                              std::optional<std::uint64_t> seed,
                              std::optional<int> epochs) {
    vnesim::RunConfig cfg = config_path.empty()
                                ? vnesim::RunConfig{}
                                : vnesim::load_run_config(config_path);
    if (seed)
        cfg.scenario.seed = *seed;
    if (epochs)
        cfg.epochs = *epochs;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virtual network embedding simulator and policy trainer"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> epochs;
    std::string scenario_dir;
    std::string out_dir = ".";
    std::string algorithm = "css-rl";
    std::string model_path;
    std::vector<std::string> algorithms;
    std::vector<std::uint64_t> seeds;

    app.add_option("--config", config_path, "Run configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Override the configured scenario seed");

    auto* gen = app.add_subcommand("generate", "Generate substrate and request files");
    gen->add_option("--out", out_dir, "Output directory")->required();

    auto* trn = app.add_subcommand("train", "Train the policy on the training split");
    trn->add_option("--scenario", scenario_dir, "Scenario directory")->required();
    trn->add_option("--out", out_dir, "Output directory")->required();
    trn->add_option("--epochs", epochs, "Override the configured epoch count");

    auto* evl = app.add_subcommand("evaluate", "Evaluate an algorithm on the test split");
    evl->add_option("--scenario", scenario_dir, "Scenario directory")->required();
    evl->add_option("--algorithm", algorithm,
                    "css-rl, greedy, topsis-ta or topsis-nta");
    evl->add_option("--model", model_path, "Trained model (css-rl only)");
    evl->add_option("--out", out_dir, "Output directory")->required();

    auto* cmp = app.add_subcommand("compare", "Run several algorithms on shared scenarios");
    cmp->add_option("--algorithms", algorithms, "At least two algorithm names")
        ->delimiter(',')
        ->required();
    cmp->add_option("--seeds", seeds, "Seeds for the shared scenarios")
        ->delimiter(',');
    cmp->add_option("--out", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const vnesim::RunConfig cfg = load_config(config_path, seed, epochs);
        if (gen->parsed()) {
            vnesim::cmd_generate(cfg, out_dir);
        } else if (trn->parsed()) {
            vnesim::cmd_train(cfg, scenario_dir, out_dir);
        } else if (evl->parsed()) {
            std::optional<std::filesystem::path> model;
            if (!model_path.empty())
                model = model_path;
            vnesim::cmd_evaluate(cfg, scenario_dir,
                                 vnesim::parse_algorithm(algorithm), model, out_dir);
        } else if (cmp->parsed()) {
            std::vector<vnesim::Algorithm> algs;
            for (const std::string& name : algorithms)
                algs.push_back(vnesim::parse_algorithm(name));
            const std::vector<std::uint64_t> run_seeds =
                seeds.empty() ? cfg.seeds : seeds;
            const vnesim::CompareResult result =
                vnesim::cmd_compare(cfg, algs, run_seeds, out_dir);
            for (const vnesim::CompareRun& run : result.runs)
                if (!run.ok)
                    std::cerr << "run failed: " << vnesim::algorithm_name(run.algorithm)
                              << " seed " << run.seed << ": " << run.error << "\n";
            if (!result.all_ok())
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
