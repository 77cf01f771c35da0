#ifndef VNESIM_RUN_HPP
#define VNESIM_RUN_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vnesim/io.hpp"
#include "vnesim/metrics.hpp"
#include "vnesim/simulate.hpp"

namespace vnesim {

// Strategy instances for evaluation. css-rl requires trained parameters.
std::unique_ptr<NodeMapper> make_mapper(Algorithm algorithm,
                                        const SubstrateNetwork& substrate,
                                        const RunConfig& cfg,
                                        const PolicyParams* trained);

// Writes substrate.txt and requests.txt under out_dir.
void cmd_generate(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Trains css-rl on the scenario's training split; writes model.txt and
// training.csv under out_dir.
void cmd_train(const RunConfig& cfg, const std::filesystem::path& scenario_dir,
               const std::filesystem::path& out_dir);

// Evaluates one algorithm on the scenario's test split; writes
// metrics_<algorithm>.csv under out_dir. model_path is required for css-rl
// and rejected for the baselines.
void cmd_evaluate(const RunConfig& cfg, const std::filesystem::path& scenario_dir,
                  Algorithm algorithm,
                  const std::optional<std::filesystem::path>& model_path,
                  const std::filesystem::path& out_dir);

struct CompareRun {
    Algorithm algorithm;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::vector<MetricsWindow> windows;
};

struct CompareResult {
    std::vector<CompareRun> runs;
    std::filesystem::path merged_csv;
    std::filesystem::path summary_csv;

    bool all_ok() const;
};

// Runs every algorithm on identical per-seed scenarios (shared substrate and
// stream), training css-rl per seed; merges per-window metrics keyed by
// (algorithm, seed, window) and emits a mean-over-seeds summary of the final
// windows. Per-run failures are recorded without aborting the other runs.
CompareResult cmd_compare(const RunConfig& cfg,
                          const std::vector<Algorithm>& algorithms,
                          const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out_dir);

} // namespace vnesim

#endif
