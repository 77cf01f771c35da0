#include "vnesim/run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "vnesim/baselines.hpp"

namespace vnesim {

namespace {

namespace fs = std::filesystem;

// Parameter initialization and action sampling draw from separate seed
// streams derived from the scenario seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kTrainStream = 2;

/// Greedy policy mapper that owns its parameters (evaluation only).
class FrozenPolicyMapper : public NodeMapper {
public:
    FrozenPolicyMapper(const PolicyParams& params, const SubstrateNetwork& substrate)
        : params_(params), agent_(params_, substrate, SampleMode::greedy) {}

    std::optional<int> select_node(const SubstrateNetwork& net,
                                   const VirtualRequest& vnr,
                                   const std::vector<int>& node_map,
                                   int vn_index) override {
        return agent_.select_node(net, vnr, node_map, vn_index);
    }

private:
    PolicyParams params_;
    PolicyAgent agent_;
};

TrainResult train_for_seed(const RunConfig& cfg, const SubstrateNetwork& net,
                           const EventStream& train_stream, std::uint64_t seed) {
    const PolicyParams initial = init_params(derive_seed(seed, kInitStream),
                                             cfg.learning_rate, cfg.batch_size);
    return train(initial, net, train_stream, cfg.epochs,
                 derive_seed(seed, kTrainStream));
}

struct Scenario {
    SubstrateNetwork net;
    EventStream train_stream;
    EventStream test_stream;
};

Scenario load_scenario(const RunConfig& cfg, const fs::path& dir) {
    Scenario s;
    s.net = load_substrate(dir / "substrate.txt");
    EventStream full = load_requests(dir / "requests.txt");
    std::tie(s.train_stream, s.test_stream) = split_train_test(full, cfg.scenario);
    return s;
}

} // namespace

std::unique_ptr<NodeMapper> make_mapper(Algorithm algorithm,
                                        const SubstrateNetwork& substrate,
                                        const RunConfig& cfg,
                                        const PolicyParams* trained) {
    switch (algorithm) {
    case Algorithm::css_rl:
        if (!trained)
            throw std::invalid_argument("css-rl needs trained parameters");
        return std::make_unique<FrozenPolicyMapper>(*trained, substrate);
    case Algorithm::greedy:
        return std::make_unique<GreedyMapper>();
    case Algorithm::topsis_ta:
        return std::make_unique<TopsisMapper>(
            substrate, RankingCriteria::trust_aware(), cfg.ksp_k);
    case Algorithm::topsis_nta:
        return std::make_unique<TopsisMapper>(
            substrate, RankingCriteria::non_trust_aware(), cfg.ksp_k);
    }
    throw std::invalid_argument("make_mapper: unhandled algorithm");
}

void cmd_generate(const RunConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);
    std::mt19937_64 rng(cfg.scenario.seed);
    const SubstrateNetwork net = generate_substrate(cfg.scenario, rng);
    const EventStream stream = generate_requests(cfg.scenario, rng);
    save_substrate(net, out_dir / "substrate.txt");
    save_requests(stream, out_dir / "requests.txt");
}

void cmd_train(const RunConfig& cfg, const fs::path& scenario_dir,
               const fs::path& out_dir) {
    cfg.validate();
    const Scenario s = load_scenario(cfg, scenario_dir);
    const TrainResult result =
        train_for_seed(cfg, s.net, s.train_stream, cfg.scenario.seed);
    fs::create_directories(out_dir);
    ModelArtifact artifact;
    artifact.params = result.params;
    artifact.seed = cfg.scenario.seed;
    artifact.epochs = cfg.epochs;
    artifact.batch_updates = result.batch_updates;
    save_model(artifact, out_dir / "model.txt");
    save_training_csv(result.curve, out_dir / "training.csv");
}

void cmd_evaluate(const RunConfig& cfg, const fs::path& scenario_dir,
                  Algorithm algorithm,
                  const std::optional<fs::path>& model_path,
                  const fs::path& out_dir) {
    cfg.validate();
    if (algorithm == Algorithm::css_rl && !model_path)
        throw std::invalid_argument("css-rl evaluation requires --model");
    if (algorithm != Algorithm::css_rl && model_path)
        throw std::invalid_argument("--model is only meaningful for css-rl");

    const Scenario s = load_scenario(cfg, scenario_dir);
    PolicyParams trained;
    if (model_path)
        trained = load_model(*model_path).params;
    const auto mapper = make_mapper(algorithm, s.net, cfg, &trained);
    const MetricsSeries series = evaluate_stream(s.net, s.test_stream, *mapper);
    fs::create_directories(out_dir);
    export_csv(series.windows(),
               out_dir / ("metrics_" + algorithm_name(algorithm) + ".csv"));
}

bool CompareResult::all_ok() const {
    return std::all_of(runs.begin(), runs.end(),
                       [](const CompareRun& r) { return r.ok; });
}

CompareResult cmd_compare(const RunConfig& cfg,
                          const std::vector<Algorithm>& algorithms,
                          const std::vector<std::uint64_t>& seeds,
                          const fs::path& out_dir) {
    cfg.validate();
    if (algorithms.size() < 2)
        throw std::invalid_argument("compare needs at least 2 algorithms");
    if (seeds.empty())
        throw std::invalid_argument("compare needs at least 1 seed");
    fs::create_directories(out_dir);

    CompareResult result;
    for (std::uint64_t seed : seeds) {
        RunConfig seed_cfg = cfg;
        seed_cfg.scenario.seed = seed;
        const fs::path scenario_dir = out_dir / ("scenario_seed" + std::to_string(seed));
        cmd_generate(seed_cfg, scenario_dir);
        const Scenario s = load_scenario(seed_cfg, scenario_dir);

        std::optional<PolicyParams> trained;
        std::string train_error;
        if (std::find(algorithms.begin(), algorithms.end(), Algorithm::css_rl) !=
            algorithms.end()) {
            try {
                trained = train_for_seed(seed_cfg, s.net, s.train_stream, seed).params;
            } catch (const std::exception& e) {
                train_error = e.what();
            }
        }

        for (Algorithm alg : algorithms) {
            CompareRun run;
            run.algorithm = alg;
            run.seed = seed;
            try {
                if (alg == Algorithm::css_rl && !trained)
                    throw std::runtime_error("training failed: " + train_error);
                const auto mapper =
                    make_mapper(alg, s.net, seed_cfg, trained ? &*trained : nullptr);
                run.windows = evaluate_stream(s.net, s.test_stream, *mapper).windows();
                run.ok = true;
            } catch (const std::exception& e) {
                run.error = e.what();
            }
            result.runs.push_back(std::move(run));
        }
    }

    // Merged per-window rows keyed by (algorithm, seed, window).
    result.merged_csv = out_dir / "compare_merged.csv";
    {
        std::ofstream out(result.merged_csv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cmd_compare: cannot open " +
                                     result.merged_csv.string());
        out << "algorithm,seed," << metrics_csv_header() << "\n";
        char line[320];
        for (const CompareRun& run : result.runs) {
            if (!run.ok)
                continue;
            for (const MetricsWindow& w : run.windows) {
                std::snprintf(line, sizeof(line),
                              "%s,%llu,%.6f,%lld,%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                              algorithm_name(run.algorithm).c_str(),
                              static_cast<unsigned long long>(run.seed),
                              w.window_end_time, static_cast<long long>(w.arrivals),
                              static_cast<long long>(w.acceptances), w.acc_ratio,
                              static_cast<double>(w.cum_revenue),
                              static_cast<double>(w.cum_cost), w.avg_revenue,
                              w.rc_ratio, w.rc_defined ? 1 : 0);
                out << line;
            }
        }
    }

    // Mean of the final-window indicators over the successful seeds.
    result.summary_csv = out_dir / "compare_summary.csv";
    {
        std::ofstream out(result.summary_csv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cmd_compare: cannot open " +
                                     result.summary_csv.string());
        out << "algorithm,runs,mean_final_acc,mean_final_rc,mean_final_avg_revenue\n";
        char line[256];
        for (Algorithm alg : algorithms) {
            int ok_runs = 0;
            double acc = 0.0, rc = 0.0, ar = 0.0;
            for (const CompareRun& run : result.runs) {
                if (run.algorithm != alg || !run.ok || run.windows.empty())
                    continue;
                ++ok_runs;
                acc += run.windows.back().acc_ratio;
                rc += run.windows.back().rc_ratio;
                ar += run.windows.back().avg_revenue;
            }
            if (ok_runs > 0) {
                acc /= ok_runs;
                rc /= ok_runs;
                ar /= ok_runs;
            }
            std::snprintf(line, sizeof(line), "%s,%d,%.6f,%.6f,%.6f\n",
                          algorithm_name(alg).c_str(), ok_runs, acc, rc, ar);
            out << line;
        }
    }
    return result;
}

} // namespace vnesim
