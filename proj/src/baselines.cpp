#include "vnesim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace vnesim {

std::optional<int> greedy_rank(const SubstrateNetwork& net, const VirtualNode& vn,
                               const std::vector<char>& used) {
    int best = -1;
    double best_rank = -1.0;
    for (int sn = 0; sn < net.node_count(); ++sn) {
        if (used[sn] || !node_feasible(net, sn, vn))
            continue;
        Resource adj_bw = 0;
        for (const auto& [nbr, li] : net.neighbors(sn)) {
            (void)nbr;
            adj_bw += residual_bw(net, li);
        }
        const double rank = static_cast<double>(residual_cpu(net, sn)) *
                            static_cast<double>(adj_bw);
        if (rank > best_rank) {
            best_rank = rank;
            best = sn;
        }
    }
    if (best < 0)
        return std::nullopt;
    return best;
}

void RankingCriteria::validate() const {
    const double weights[] = {degree_weight, closeness_weight, resource_weight,
                              security_weight};
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw std::invalid_argument("RankingCriteria: negative weight");
        sum += w;
    }
    if (sum <= 0.0)
        throw std::invalid_argument("RankingCriteria: all weights zero");
}

std::optional<int> topsis_rank(const SubstrateNetwork& net, const VirtualNode& vn,
                               const std::vector<char>& used,
                               const RankingCriteria& criteria,
                               const DistanceTable& dist) {
    criteria.validate();
    const int n = net.node_count();
    std::vector<int> candidates;
    for (int sn = 0; sn < n; ++sn)
        if (!used[sn] && node_feasible(net, sn, vn))
            candidates.push_back(sn);
    if (candidates.empty())
        return std::nullopt;

    constexpr int kCriteria = 4;
    const double weights[kCriteria] = {criteria.degree_weight,
                                       criteria.closeness_weight,
                                       criteria.resource_weight,
                                       criteria.security_weight};
    std::vector<std::array<double, kCriteria>> values(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const int sn = candidates[c];
        const double degree =
            static_cast<double>(net.neighbors(sn).size()) / std::max(1, n - 1);
        double dist_sum = 0.0;
        for (int other = 0; other < n; ++other)
            if (other != sn)
                dist_sum += dist(sn, other);
        const double closeness = dist_sum > 0.0 ? (n - 1) / dist_sum : 0.0;
        Resource adj_bw = 0;
        for (const auto& [nbr, li] : net.neighbors(sn)) {
            (void)nbr;
            adj_bw += residual_bw(net, li);
        }
        const double capability = static_cast<double>(
            residual_cpu(net, sn) + residual_sto(net, sn) + adj_bw);
        values[c] = {degree, closeness, capability,
                     static_cast<double>(net.nodes[sn].security_level)};
    }

    // Min-max per criterion over the candidate set, then weights.
    for (int f = 0; f < kCriteria; ++f) {
        double lo = values[0][f], hi = values[0][f];
        for (const auto& v : values) {
            lo = std::min(lo, v[f]);
            hi = std::max(hi, v[f]);
        }
        for (auto& v : values)
            v[f] = (hi > lo ? (v[f] - lo) / (hi - lo) : 0.5) * weights[f];
    }
    std::array<double, kCriteria> best_point{}, worst_point{};
    for (int f = 0; f < kCriteria; ++f) {
        best_point[f] = values[0][f];
        worst_point[f] = values[0][f];
        for (const auto& v : values) {
            best_point[f] = std::max(best_point[f], v[f]);
            worst_point[f] = std::min(worst_point[f], v[f]);
        }
    }

    int best = -1;
    double best_closeness = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double d_best = 0.0, d_worst = 0.0;
        for (int f = 0; f < kCriteria; ++f) {
            d_best += (values[c][f] - best_point[f]) * (values[c][f] - best_point[f]);
            d_worst +=
                (values[c][f] - worst_point[f]) * (values[c][f] - worst_point[f]);
        }
        d_best = std::sqrt(d_best);
        d_worst = std::sqrt(d_worst);
        const double closeness =
            d_best + d_worst > 0.0 ? d_worst / (d_best + d_worst) : 1.0;
        if (closeness > best_closeness) {
            best_closeness = closeness;
            best = candidates[c];
        }
    }
    return best;
}

namespace {

// BFS shortest node path over the demand-feasible subgraph, skipping banned
// nodes/links. Neighbors explored in ascending index order.
std::optional<std::vector<int>> bfs_node_path(const SubstrateNetwork& net, int src,
                                              int dst, Resource demand,
                                              const std::vector<char>& banned_node,
                                              const std::vector<char>& banned_link) {
    const int n = net.node_count();
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    seen[src] = 1;
    frontier.push(src);
    while (!frontier.empty() && !seen[dst]) {
        const int u = frontier.front();
        frontier.pop();
        for (const auto& [nbr, li] : net.neighbors(u)) {
            if (seen[nbr] || banned_node[nbr] || banned_link[li] ||
                residual_bw(net, li) < demand)
                continue;
            seen[nbr] = 1;
            parent[nbr] = u;
            if (nbr == dst)
                break;
            frontier.push(nbr);
        }
    }
    if (!seen[dst])
        return std::nullopt;
    std::vector<int> path;
    for (int v = dst; v != -1; v = parent[v])
        path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> to_link_path(const SubstrateNetwork& net,
                              const std::vector<int>& node_path) {
    std::vector<int> links;
    for (std::size_t i = 1; i < node_path.size(); ++i)
        links.push_back(net.link_between(node_path[i - 1], node_path[i]));
    return links;
}

} // namespace

std::vector<std::vector<int>> k_shortest_paths(const SubstrateNetwork& net,
                                               int src, int dst, int k,
                                               Resource demand) {
    if (src == dst)
        throw std::invalid_argument("k_shortest_paths: src == dst");
    if (k < 1)
        throw std::invalid_argument("k_shortest_paths: k must be >= 1");

    std::vector<char> no_node(net.node_count(), 0);
    std::vector<char> no_link(net.link_count(), 0);
    std::vector<std::vector<int>> found; // node paths
    auto first = bfs_node_path(net, src, dst, demand, no_node, no_link);
    if (!first) {
        return {};
    }
    found.push_back(*first);

    // Candidates ordered by (hops, lexicographic node sequence).
    auto cmp = [](const std::vector<int>& x, const std::vector<int>& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    };
    std::set<std::vector<int>, decltype(cmp)> candidates(cmp);

    while (static_cast<int>(found.size()) < k) {
        const std::vector<int>& prev = found.back();
        for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
            const std::vector<int> root(prev.begin(),
                                        prev.begin() + static_cast<long>(spur) + 1);
            std::vector<char> banned_node(net.node_count(), 0);
            std::vector<char> banned_link(net.link_count(), 0);
            // Deviations must not revisit the root or repeat a known path's
            // continuation edge.
            for (std::size_t i = 0; i < spur; ++i)
                banned_node[prev[i]] = 1;
            for (const std::vector<int>& p : found)
                if (p.size() > spur + 1 &&
                    std::equal(root.begin(), root.end(), p.begin()))
                    banned_link[net.link_between(p[spur], p[spur + 1])] = 1;
            const auto spur_path = bfs_node_path(net, prev[spur], dst, demand,
                                                 banned_node, banned_link);
            if (!spur_path)
                continue;
            std::vector<int> total = root;
            total.insert(total.end(), spur_path->begin() + 1, spur_path->end());
            if (std::find(found.begin(), found.end(), total) == found.end())
                candidates.insert(std::move(total));
        }
        if (candidates.empty())
            break;
        found.push_back(*candidates.begin());
        candidates.erase(candidates.begin());
    }

    std::vector<std::vector<int>> out;
    out.reserve(found.size());
    for (const auto& node_path : found)
        out.push_back(to_link_path(net, node_path));
    return out;
}

std::vector<int> demand_descending_link_order(const VirtualRequest& vnr) {
    std::vector<int> order(vnr.links.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return vnr.links[x].bw_demand > vnr.links[y].bw_demand;
    });
    return order;
}

std::optional<int> GreedyMapper::select_node(const SubstrateNetwork& net,
                                             const VirtualRequest& vnr,
                                             const std::vector<int>& node_map,
                                             int vn_index) {
    std::vector<char> used(net.node_count(), 0);
    for (int sn : node_map)
        if (sn >= 0)
            used[sn] = 1;
    return greedy_rank(net, vnr.nodes[vn_index], used);
}

std::vector<int> GreedyMapper::link_order(const VirtualRequest& vnr) const {
    return demand_descending_link_order(vnr);
}

TopsisMapper::TopsisMapper(const SubstrateNetwork& substrate,
                           RankingCriteria criteria, int ksp_k)
    : criteria_(criteria), dist_(floyd_warshall(substrate)), ksp_k_(ksp_k) {
    criteria_.validate();
    if (ksp_k_ < 1)
        throw std::invalid_argument("TopsisMapper: ksp_k must be >= 1");
}

std::optional<int> TopsisMapper::select_node(const SubstrateNetwork& net,
                                             const VirtualRequest& vnr,
                                             const std::vector<int>& node_map,
                                             int vn_index) {
    std::vector<char> used(net.node_count(), 0);
    for (int sn : node_map)
        if (sn >= 0)
            used[sn] = 1;
    return topsis_rank(net, vnr.nodes[vn_index], used, criteria_, dist_);
}

std::vector<int> TopsisMapper::link_order(const VirtualRequest& vnr) const {
    return demand_descending_link_order(vnr);
}

std::optional<std::vector<int>> TopsisMapper::route_link(
    const SubstrateNetwork& net, int src, int dst, Resource demand) const {
    const auto paths = k_shortest_paths(net, src, dst, ksp_k_, demand);
    for (const auto& path : paths)
        if (path_feasible(net, path, demand))
            return path;
    return std::nullopt;
}

} // namespace vnesim
