#include "vnesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace vnesim {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok)
        throw std::invalid_argument(message);
}

void check_range(const Range& r, const char* key) {
    require(r.lo <= r.hi, std::string(key) + ": min " + std::to_string(r.lo) +
                              " > max " + std::to_string(r.hi));
    require(r.lo >= 0, std::string(key) + ": negative minimum");
}

std::int64_t sample_range(const Range& r, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng);
}

} // namespace

void ScenarioConfig::validate() const {
    require(substrate_nodes >= 2, "substrate_nodes: must be >= 2");
    check_range(cpu_range, "cpu_range");
    check_range(sto_range, "sto_range");
    check_range(bw_range, "bw_range");
    check_range(sl_range, "sl_range");
    require(sl_range.hi <= 3, "sl_range: levels are grades in [0,3]");
    check_range(vnr_nodes_range, "vnr_nodes_range");
    require(vnr_nodes_range.lo >= 2, "vnr_nodes_range: requests need >= 2 nodes");
    check_range(vnr_cpu_range, "vnr_cpu_range");
    check_range(vnr_sto_range, "vnr_sto_range");
    check_range(vnr_bw_range, "vnr_bw_range");
    check_range(sr_range, "sr_range");
    require(sr_range.hi <= 3, "sr_range: requirements are grades in [0,3]");
    require(vnr_count >= 0, "vnr_count: must be >= 0");
    require(arrival_rate > 0.0, "arrival_rate: must be > 0");
    require(mean_lifetime > 0.0, "mean_lifetime: must be > 0");
    require(train_fraction > 0.0 && train_fraction < 1.0,
            "train_fraction: must be in (0,1)");
    if (link_model == LinkModel::waxman) {
        require(waxman_alpha > 0.0 && waxman_alpha <= 1.0,
                "waxman_alpha: must be in (0,1]");
        require(waxman_beta > 0.0, "waxman_beta: must be > 0");
    } else {
        require(link_probability >= 0.0 && link_probability <= 1.0,
                "link_probability: must be in [0,1]");
    }
}

const VirtualRequest& EventStream::request(std::int64_t request_id) const {
    auto it = std::lower_bound(requests.begin(), requests.end(), request_id,
                               [](const VirtualRequest& r, std::int64_t id) {
                                   return r.request_id < id;
                               });
    if (it == requests.end() || it->request_id != request_id)
        throw std::out_of_range("EventStream: unknown request " +
                                std::to_string(request_id));
    return *it;
}

void EventStream::rebuild_events() {
    events.clear();
    events.reserve(requests.size() * 2);
    for (const VirtualRequest& r : requests) {
        events.push_back({r.arrival_time, SimEvent::Kind::arrival, r.request_id});
        events.push_back({r.arrival_time + r.lifetime, SimEvent::Kind::departure,
                          r.request_id});
    }
    std::sort(events.begin(), events.end(),
              [](const SimEvent& x, const SimEvent& y) {
                  if (x.time != y.time)
                      return x.time < y.time;
                  if (x.kind != y.kind)
                      return x.kind < y.kind; // departures before arrivals
                  return x.request_id < y.request_id;
              });
}

SubstrateNetwork generate_substrate(const ScenarioConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SubstrateNetwork net;
        for (int i = 0; i < cfg.substrate_nodes; ++i) {
            const Resource cpu = sample_range(cfg.cpu_range, rng);
            const Resource sto = sample_range(cfg.sto_range, rng);
            const int sl = static_cast<int>(sample_range(cfg.sl_range, rng));
            net.add_node(cpu, sto, sl);
        }
        std::vector<std::pair<double, double>> pos;
        if (cfg.link_model == LinkModel::waxman) {
            pos.resize(cfg.substrate_nodes);
            for (auto& p : pos) {
                p.first = unit(rng);
                p.second = unit(rng);
            }
        }
        const double scale = std::sqrt(2.0); // max distance in the unit square
        for (int i = 0; i < cfg.substrate_nodes; ++i)
            for (int j = i + 1; j < cfg.substrate_nodes; ++j) {
                double p;
                if (cfg.link_model == LinkModel::waxman) {
                    const double dx = pos[i].first - pos[j].first;
                    const double dy = pos[i].second - pos[j].second;
                    const double d = std::sqrt(dx * dx + dy * dy);
                    p = cfg.waxman_alpha * std::exp(-d / (cfg.waxman_beta * scale));
                } else {
                    p = cfg.link_probability;
                }
                if (unit(rng) < p)
                    net.add_link(i, j, sample_range(cfg.bw_range, rng));
            }
        if (net.connected())
            return net;
    }
    throw std::runtime_error(
        "generate_substrate: no connected topology after 100 attempts");
}

namespace {

// Uniform random labeled tree on n >= 2 nodes via a Prufer sequence.
std::vector<std::pair<int, int>> random_spanning_tree(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    if (n == 2) {
        edges.push_back({0, 1});
        return edges;
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> prufer(n - 2);
    for (int& v : prufer)
        v = pick(rng);
    std::vector<int> degree(n, 1);
    for (int v : prufer)
        ++degree[v];
    std::set<int> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[i] == 1)
            leaves.insert(i);
    for (int v : prufer) {
        const int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({std::min(leaf, v), std::max(leaf, v)});
        if (--degree[v] == 1)
            leaves.insert(v);
    }
    const int u = *leaves.begin();
    const int w = *std::next(leaves.begin());
    edges.push_back({std::min(u, w), std::max(u, w)});
    return edges;
}

} // namespace

EventStream generate_requests(const ScenarioConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    std::exponential_distribution<double> inter_arrival(cfg.arrival_rate / 100.0);
    std::exponential_distribution<double> lifetime_dist(1.0 / cfg.mean_lifetime);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    EventStream stream;
    stream.requests.reserve(cfg.vnr_count);
    double clock = 0.0;
    for (int id = 0; id < cfg.vnr_count; ++id) {
        clock += inter_arrival(rng);
        VirtualRequest vnr;
        vnr.request_id = id;
        vnr.arrival_time = clock;
        do {
            vnr.lifetime = lifetime_dist(rng);
        } while (vnr.lifetime <= 0.0);

        const int n = static_cast<int>(sample_range(cfg.vnr_nodes_range, rng));
        vnr.nodes.reserve(n);
        for (int v = 0; v < n; ++v)
            vnr.nodes.push_back({v, sample_range(cfg.vnr_cpu_range, rng),
                                 sample_range(cfg.vnr_sto_range, rng),
                                 static_cast<int>(sample_range(cfg.sr_range, rng))});

        std::set<std::pair<int, int>> present;
        for (auto [a, b] : random_spanning_tree(n, rng)) {
            vnr.links.push_back({a, b, sample_range(cfg.vnr_bw_range, rng)});
            present.insert({a, b});
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (present.count({a, b}))
                    continue;
                if (unit(rng) < 0.5)
                    vnr.links.push_back({a, b, sample_range(cfg.vnr_bw_range, rng)});
            }
        stream.requests.push_back(std::move(vnr));
    }
    stream.rebuild_events();
    return stream;
}

std::pair<EventStream, EventStream> split_train_test(const EventStream& stream,
                                                     const ScenarioConfig& cfg) {
    cfg.validate();
    const auto total = stream.requests.size();
    const auto train_count = static_cast<std::size_t>(
        std::ceil(cfg.train_fraction * static_cast<double>(total)));
    EventStream train, test;
    train.requests.assign(stream.requests.begin(),
                          stream.requests.begin() + std::min(train_count, total));
    test.requests.assign(stream.requests.begin() + std::min(train_count, total),
                         stream.requests.end());
    train.rebuild_events();
    test.rebuild_events();
    return {std::move(train), std::move(test)};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace vnesim
