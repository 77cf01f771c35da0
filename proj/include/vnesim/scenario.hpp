#ifndef VNESIM_SCENARIO_HPP
#define VNESIM_SCENARIO_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "vnesim/network.hpp"

namespace vnesim {

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    bool contains(std::int64_t v) const { return v >= lo && v <= hi; }
    bool operator==(const Range&) const = default;
};

enum class LinkModel { waxman, uniform_probability };

struct ScenarioConfig {
    int substrate_nodes = 100;
    LinkModel link_model = LinkModel::waxman;
    double waxman_alpha = 0.5;
    double waxman_beta = 0.2;
    double link_probability = 0.5; // uniform-probability model only
    Range cpu_range{50, 100};
    Range sto_range{50, 100};
    Range bw_range{50, 100};
    Range sl_range{0, 3};
    int vnr_count = 2000;
    Range vnr_nodes_range{2, 10};
    Range vnr_cpu_range{0, 50};
    Range vnr_sto_range{0, 50};
    Range vnr_bw_range{0, 50};
    Range sr_range{0, 3};
    double arrival_rate = 4.0;    // requests per 100 time units
    double mean_lifetime = 1000.0;
    double train_fraction = 0.5;
    std::uint64_t seed = 1;

    // Throws std::invalid_argument naming the offending config key.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

struct SimEvent {
    enum class Kind { departure = 0, arrival = 1 };

    double time = 0.0;
    Kind kind = Kind::arrival;
    std::int64_t request_id = 0;

    bool operator==(const SimEvent&) const = default;
};

/// Timed stream of request arrivals and departures, sorted by time (departures
/// first on ties). Every arrival has a departure at arrival_time + lifetime.
struct EventStream {
    std::vector<VirtualRequest> requests; // sorted by request_id
    std::vector<SimEvent> events;

    const VirtualRequest& request(std::int64_t request_id) const;
    std::size_t arrival_count() const { return requests.size(); }

    // Rebuilds the events list from the requests (used after load/split).
    void rebuild_events();

    bool operator==(const EventStream&) const = default;
};

// Connected random substrate with attributes sampled from the config ranges.
// Retries generation a bounded number of times if the topology comes out
// disconnected, then throws std::runtime_error.
SubstrateNetwork generate_substrate(const ScenarioConfig& cfg, std::mt19937_64& rng);

// Poisson arrivals (exponential inter-arrival of mean 100/arrival_rate),
// exponential lifetimes, connected request graphs built from a uniform random
// spanning tree plus extra pairs with probability 0.5.
EventStream generate_requests(const ScenarioConfig& cfg, std::mt19937_64& rng);

// First ceil(train_fraction * arrivals) requests (with their departures) go to
// the training stream, the remainder to the test stream; times are preserved.
std::pair<EventStream, EventStream> split_train_test(const EventStream& stream,
                                                     const ScenarioConfig& cfg);

// Stable per-purpose seed derivation (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

} // namespace vnesim

#endif
