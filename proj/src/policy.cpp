#include "vnesim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vnesim/simulate.hpp"

namespace vnesim {

PolicyParams init_params(std::uint64_t seed, double learning_rate, int batch_size) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.1);
    PolicyParams params;
    for (double& w : params.kernel)
        w = normal(rng);
    params.bias = normal(rng);
    params.learning_rate = learning_rate;
    params.batch_size = batch_size;
    return params;
}

std::vector<double> score(const PolicyParams& params, const FeatureMatrix& mf) {
    std::vector<double> out(mf.node_count());
    for (int i = 0; i < mf.node_count(); ++i) {
        const auto& v = mf.normalized[i];
        out[i] = params.kernel[0] * v[0] + params.kernel[1] * v[1] +
                 params.kernel[2] * v[2] + params.kernel[3] * v[3] + params.bias;
    }
    return out;
}

std::vector<double> masked_softmax(std::span<const double> scores,
                                   const std::vector<char>& feasible) {
    if (scores.size() != feasible.size())
        throw std::invalid_argument("masked_softmax: mask size mismatch");
    double max_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (feasible[i])
            max_score = std::max(max_score, scores[i]);
    if (max_score == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("masked_softmax: no feasible candidate");
    std::vector<double> probs(scores.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (feasible[i]) {
            probs[i] = std::exp(scores[i] - max_score);
            sum += probs[i];
        }
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (feasible[i])
            probs[i] /= sum;
    return probs;
}

std::pair<int, Decision> sample_node(std::span<const double> probabilities,
                                     const FeatureMatrix& mf, SampleMode mode,
                                     std::mt19937_64& rng) {
    const int n = static_cast<int>(probabilities.size());
    int chosen = -1;
    if (mode == SampleMode::greedy) {
        double best = -1.0;
        for (int i = 0; i < n; ++i)
            if (probabilities[i] > best) {
                best = probabilities[i];
                chosen = i;
            }
    } else {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        double cum = 0.0;
        for (int i = 0; i < n; ++i) {
            if (probabilities[i] <= 0.0)
                continue;
            cum += probabilities[i];
            chosen = i;
            if (u < cum)
                break;
        }
    }
    if (chosen < 0)
        throw std::invalid_argument("sample_node: no positive probability");

    Decision d;
    d.chosen = chosen;
    d.probabilities.assign(probabilities.begin(), probabilities.end());
    std::array<double, 4> expected{};
    for (int i = 0; i < n; ++i)
        if (probabilities[i] > 0.0)
            for (int f = 0; f < 4; ++f)
                expected[f] += probabilities[i] * mf.normalized[i][f];
    for (int f = 0; f < 4; ++f)
        d.grad_kernel[f] = mf.normalized[chosen][f] - expected[f];
    d.grad_bias = 0.0;
    return {chosen, std::move(d)};
}

void accumulate_gradient(GradientAccumulator& acc,
                         std::span<const Decision> decisions, double reward,
                         double learning_rate) {
    for (const Decision& d : decisions) {
        for (int f = 0; f < 4; ++f)
            acc.kernel_sum[f] += learning_rate * reward * d.grad_kernel[f];
        acc.bias_sum += learning_rate * reward * d.grad_bias;
    }
}

void batch_update(PolicyParams& params, GradientAccumulator& acc) {
    if (acc.request_counter != params.batch_size)
        throw std::logic_error("batch_update: called at counter " +
                               std::to_string(acc.request_counter) +
                               ", batch size " + std::to_string(params.batch_size));
    for (int f = 0; f < 4; ++f)
        params.kernel[f] += acc.kernel_sum[f];
    params.bias += acc.bias_sum;
    acc.reset();
}

PolicyAgent::PolicyAgent(const PolicyParams& params,
                         const SubstrateNetwork& substrate, SampleMode mode,
                         std::mt19937_64* rng)
    : params_(&params), dist_(floyd_warshall(substrate)), mode_(mode), rng_(rng) {
    if (mode_ == SampleMode::stochastic && rng_ == nullptr)
        throw std::invalid_argument("PolicyAgent: stochastic mode needs an rng");
}

std::optional<int> PolicyAgent::select_node(const SubstrateNetwork& net,
                                            const VirtualRequest& vnr,
                                            const std::vector<int>& node_map,
                                            int vn_index) {
    std::vector<int> mapped;
    for (int sn : node_map)
        if (sn >= 0)
            mapped.push_back(sn);
    std::vector<char> feasible(net.node_count(), 0);
    bool any = false;
    for (int sn = 0; sn < net.node_count(); ++sn) {
        const bool used =
            std::find(mapped.begin(), mapped.end(), sn) != mapped.end();
        if (!used && node_feasible(net, sn, vnr.nodes[vn_index])) {
            feasible[sn] = 1;
            any = true;
        }
    }
    if (!any)
        return std::nullopt;

    const FeatureMatrix mf = build_feature_matrix(net, mapped, dist_);
    const std::vector<double> probs = masked_softmax(score(*params_, mf), feasible);
    static std::mt19937_64 unused_rng; // greedy mode never draws
    auto [chosen, decision] =
        sample_node(probs, mf, mode_, rng_ ? *rng_ : unused_rng);
    if (mode_ == SampleMode::stochastic)
        pending_.push_back(std::move(decision));
    return chosen;
}

std::vector<Decision> PolicyAgent::take_pending() {
    std::vector<Decision> out;
    out.swap(pending_);
    return out;
}

namespace {

double request_reward(const Embedding& emb) {
    // cost == 0 only for an all-zero-demand request; nothing was consumed.
    return emb.cost > 0
               ? static_cast<double>(emb.revenue) / static_cast<double>(emb.cost)
               : 1.0;
}

} // namespace

TrainResult train(const PolicyParams& initial, const SubstrateNetwork& substrate,
                  const EventStream& stream, int epochs, std::uint64_t seed) {
    if (epochs < 0)
        throw std::invalid_argument("train: epochs must be >= 0");
    TrainResult result;
    result.params = initial;
    GradientAccumulator acc;
    std::mt19937_64 rng(seed);
    PolicyAgent agent(result.params, substrate, SampleMode::stochastic, &rng);

    int window_index = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        SubstrateNetwork net = substrate;
        EmbeddingEngine engine(net);
        TrainingRecord window;
        window.epoch = epoch;
        window.window_index = window_index;
        double window_reward_sum = 0.0;

        auto flush_window = [&]() {
            if (window.window_arrivals == 0)
                return;
            window.mean_reward = window_reward_sum / window.window_arrivals;
            window.window_acc =
                static_cast<double>(window.window_accepted) / window.window_arrivals;
            window.window_rc = window.window_cost > 0.0
                                   ? window.window_revenue / window.window_cost
                                   : 1.0;
            result.curve.push_back(window);
            ++window_index;
            window = TrainingRecord{};
            window.epoch = epoch;
            window.window_index = window_index;
            window_reward_sum = 0.0;
        };

        for (const SimEvent& ev : stream.events) {
            if (ev.kind == SimEvent::Kind::departure) {
                if (engine.is_active(ev.request_id))
                    engine.release_request(ev.request_id);
                continue;
            }
            const VirtualRequest& vnr = stream.request(ev.request_id);
            const EmbedResult embed = engine.embed_request(vnr, agent);
            const std::vector<Decision> decisions = agent.take_pending();
            ++window.window_arrivals;
            if (embed.accepted()) {
                const double reward = request_reward(*embed.embedding);
                accumulate_gradient(acc, decisions, reward,
                                    result.params.learning_rate);
                ++window.window_accepted;
                window_reward_sum += reward;
                window.window_revenue += static_cast<double>(embed.embedding->revenue);
                window.window_cost += static_cast<double>(embed.embedding->cost);
            }
            // A failed request's decision gradients were dropped with the
            // `decisions` buffer above.
            ++acc.request_counter;
            if (acc.request_counter == result.params.batch_size) {
                batch_update(result.params, acc);
                ++result.batch_updates;
            }
            if (window.window_arrivals == result.params.batch_size)
                flush_window();
        }
        flush_window();
    }
    return result;
}

MetricsSeries evaluate(const PolicyParams& params,
                       const SubstrateNetwork& substrate,
                       const EventStream& stream) {
    PolicyAgent agent(params, substrate, SampleMode::greedy);
    return evaluate_stream(substrate, stream, agent);
}

} // namespace vnesim
