#ifndef VNESIM_IO_HPP
#define VNESIM_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vnesim/network.hpp"
#include "vnesim/policy.hpp"
#include "vnesim/scenario.hpp"

namespace vnesim {

enum class Algorithm { css_rl, greedy, topsis_ta, topsis_nta };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct RunConfig {
    ScenarioConfig scenario;
    Algorithm algorithm = Algorithm::css_rl;
    int epochs = 50;
    int batch_size = 100;
    double learning_rate = 0.005;
    int ksp_k = 5;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

    void validate() const;
};

// Key = value file over the documented keys; missing keys keep Table-1-style
// defaults, unknown keys raise a diagnostic naming the key.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text);

/// Persisted policy parameters plus training provenance.
struct ModelArtifact {
    PolicyParams params;
    std::uint64_t seed = 0;
    int epochs = 0;
    int batch_updates = 0;

    bool operator==(const ModelArtifact&) const = default;
};

void save_model(const ModelArtifact& model, const std::filesystem::path& path);
ModelArtifact load_model(const std::filesystem::path& path);

void save_substrate(const SubstrateNetwork& net, const std::filesystem::path& path);
SubstrateNetwork load_substrate(const std::filesystem::path& path);

void save_requests(const EventStream& stream, const std::filesystem::path& path);
EventStream load_requests(const std::filesystem::path& path);

void save_training_csv(const std::vector<TrainingRecord>& curve,
                       const std::filesystem::path& path);

} // namespace vnesim

#endif
