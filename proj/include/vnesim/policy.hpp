#ifndef VNESIM_POLICY_HPP
#define VNESIM_POLICY_HPP

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vnesim/embedding.hpp"
#include "vnesim/features.hpp"
#include "vnesim/metrics.hpp"
#include "vnesim/network.hpp"
#include "vnesim/scenario.hpp"

namespace vnesim {

struct PolicyParams {
    std::array<double, 4> kernel{}; // shared convolution weights over feature columns
    double bias = 0.0;
    double learning_rate = 0.005;
    int batch_size = 100;

    bool operator==(const PolicyParams&) const = default;
};

// Zero-mean normal initialization (std 0.1) of kernel and bias.
PolicyParams init_params(std::uint64_t seed, double learning_rate = 0.005,
                         int batch_size = 100);

// One scalar score per node: kernel . column + bias, shared across columns.
std::vector<double> score(const PolicyParams& params, const FeatureMatrix& mf);

// Softmax over the feasible nodes only (max-subtraction stabilized);
// infeasible nodes get probability exactly 0. Throws std::invalid_argument
// when no node is feasible.
std::vector<double> masked_softmax(std::span<const double> scores,
                                   const std::vector<char>& feasible);

/// One node-selection step: the chosen node, the full probability vector, and
/// the analytic gradient of log p(chosen) with respect to the parameters.
/// The bias shifts every score equally, so its log-probability gradient is 0.
struct Decision {
    int chosen = -1;
    std::vector<double> probabilities;
    std::array<double, 4> grad_kernel{};
    double grad_bias = 0.0;
};

enum class SampleMode { stochastic, greedy };

// Stochastic mode draws from the distribution; greedy mode takes the argmax
// with lowest-index tie-break. The feature matrix supplies the columns needed
// for the gradient: d/dkernel = v_chosen - sum_i p_i v_i.
std::pair<int, Decision> sample_node(std::span<const double> probabilities,
                                     const FeatureMatrix& mf, SampleMode mode,
                                     std::mt19937_64& rng);

/// Running sums of reward-weighted log-probability gradients plus the count
/// of requests seen since the last batch update.
struct GradientAccumulator {
    std::array<double, 4> kernel_sum{};
    double bias_sum = 0.0;
    int request_counter = 0;

    void reset() {
        kernel_sum = {};
        bias_sum = 0.0;
        request_counter = 0;
    }
};

// Adds learning_rate * reward * (sum of the decisions' gradients).
void accumulate_gradient(GradientAccumulator& acc,
                         std::span<const Decision> decisions, double reward,
                         double learning_rate);

// Gradient-ascent step: params += accumulated sums, then reset. Must be called
// exactly when request_counter == batch_size.
void batch_update(PolicyParams& params, GradientAccumulator& acc);

/// Node-mapping strategy backed by the policy network. Stochastic sampling
/// records per-step decisions for the caller to reward or discard.
class PolicyAgent : public NodeMapper {
public:
    PolicyAgent(const PolicyParams& params, const SubstrateNetwork& substrate,
                SampleMode mode, std::mt19937_64* rng = nullptr);

    std::optional<int> select_node(const SubstrateNetwork& net,
                                   const VirtualRequest& vnr,
                                   const std::vector<int>& node_map,
                                   int vn_index) override;

    // Decisions recorded since the last call; clears the buffer.
    std::vector<Decision> take_pending();

private:
    const PolicyParams* params_;
    DistanceTable dist_;
    SampleMode mode_;
    std::mt19937_64* rng_;
    std::vector<Decision> pending_;
};

/// Per-batch training curve sample (one row per window of batch_size arrivals,
/// plus a trailing partial window per epoch when the counts do not divide).
struct TrainingRecord {
    int epoch = 0;
    int window_index = 0; // global, across epochs
    int window_arrivals = 0;
    int window_accepted = 0;
    double mean_reward = 0.0; // accepted rewards averaged over window arrivals
    double window_revenue = 0.0;
    double window_cost = 0.0;
    double window_rc = 1.0;
    double window_acc = 0.0;
};

struct TrainResult {
    PolicyParams params;
    std::vector<TrainingRecord> curve;
    int batch_updates = 0;
};

// REINFORCE training: replays the stream for the given number of epochs on a
// fresh substrate copy each epoch, sampling stochastically, rewarding each
// embedded request with its revenue/cost ratio and updating parameters every
// batch_size arrivals.
TrainResult train(const PolicyParams& initial, const SubstrateNetwork& substrate,
                  const EventStream& stream, int epochs, std::uint64_t seed);

// Greedy-mode replay of the stream with frozen parameters.
MetricsSeries evaluate(const PolicyParams& params,
                       const SubstrateNetwork& substrate,
                       const EventStream& stream);

} // namespace vnesim

#endif
