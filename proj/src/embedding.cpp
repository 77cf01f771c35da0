#include "vnesim/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "vnesim/metrics.hpp"

namespace vnesim {

std::vector<int> NodeMapper::link_order(const VirtualRequest& vnr) const {
    std::vector<int> order(vnr.links.size());
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::optional<std::vector<int>> NodeMapper::route_link(const SubstrateNetwork& net,
                                                       int src, int dst,
                                                       Resource demand) const {
    return bfs_link_map(net, src, dst, demand);
}

std::optional<std::vector<int>> bfs_link_map(const SubstrateNetwork& net,
                                             int src, int dst, Resource demand) {
    if (src == dst)
        throw std::invalid_argument("bfs_link_map: src == dst");
    const int n = net.node_count();
    if (src < 0 || src >= n || dst < 0 || dst >= n)
        throw std::out_of_range("bfs_link_map: endpoint out of range");

    std::vector<int> parent_link(n, -1);
    std::vector<int> parent_node(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    seen[src] = 1;
    frontier.push(src);
    while (!frontier.empty() && !seen[dst]) {
        const int u = frontier.front();
        frontier.pop();
        for (const auto& [nbr, li] : net.neighbors(u)) {
            if (seen[nbr] || residual_bw(net, li) < demand)
                continue;
            seen[nbr] = 1;
            parent_node[nbr] = u;
            parent_link[nbr] = li;
            if (nbr == dst)
                break;
            frontier.push(nbr);
        }
    }
    if (!seen[dst])
        return std::nullopt;
    std::vector<int> path;
    for (int v = dst; v != src; v = parent_node[v])
        path.push_back(parent_link[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// Applied ledger deltas, so a failed commit can be undone exactly.
struct LedgerLog {
    std::vector<std::pair<int, Resource>> node_cpu;
    std::vector<std::pair<int, Resource>> node_sto;
    std::vector<std::pair<int, Resource>> link_bw;

    void undo(SubstrateNetwork& net) const {
        for (auto [n, amt] : node_cpu)
            net.nodes[n].cpu_used -= amt;
        for (auto [n, amt] : node_sto)
            net.nodes[n].sto_used -= amt;
        for (auto [l, amt] : link_bw)
            net.links[l].bw_used -= amt;
    }
};

} // namespace

void commit(SubstrateNetwork& net, const Embedding& emb) {
    LedgerLog log;
    auto fail = [&](const std::string& what) {
        log.undo(net);
        throw std::logic_error("commit: " + what +
                               " (request " + std::to_string(emb.request_id) + ")");
    };

    // Structural validation first, before any ledger mutation: injective node
    // map over valid indices, well-formed connected paths.
    std::vector<char> taken(net.nodes.size(), 0);
    for (const auto& na : emb.nodes) {
        if (na.substrate_node < 0 || na.substrate_node >= net.node_count())
            fail("node index out of range");
        if (taken[na.substrate_node])
            fail("node map not injective");
        taken[na.substrate_node] = 1;
    }
    try {
        for (const auto& la : emb.links)
            path_feasible(net, la.path, 0);
    } catch (const std::exception& e) {
        fail(std::string("malformed path: ") + e.what());
    }
    for (const auto& na : emb.nodes) {
        const int sn = na.substrate_node;
        if (residual_cpu(net, sn) < na.cpu || residual_sto(net, sn) < na.sto ||
            net.nodes[sn].security_level < na.security_requirement)
            fail("node constraints violated on node " + std::to_string(sn));
        net.nodes[sn].cpu_used += na.cpu;
        net.nodes[sn].sto_used += na.sto;
        log.node_cpu.push_back({sn, na.cpu});
        log.node_sto.push_back({sn, na.sto});
    }
    // Applied incrementally so paths sharing a substrate link are checked
    // against the combined demand.
    for (const auto& la : emb.links) {
        if (!path_feasible(net, la.path, la.bw))
            fail("path bandwidth constraint violated");
        for (int li : la.path) {
            net.links[li].bw_used += la.bw;
            log.link_bw.push_back({li, la.bw});
        }
    }
}

void release(SubstrateNetwork& net, const Embedding& emb) {
    // Validate the whole release before mutating anything.
    std::vector<Resource> cpu_delta(net.nodes.size(), 0);
    std::vector<Resource> sto_delta(net.nodes.size(), 0);
    std::vector<Resource> bw_delta(net.links.size(), 0);
    for (const auto& na : emb.nodes) {
        if (na.substrate_node < 0 || na.substrate_node >= net.node_count())
            throw std::logic_error("release: node index out of range");
        cpu_delta[na.substrate_node] += na.cpu;
        sto_delta[na.substrate_node] += na.sto;
    }
    for (const auto& la : emb.links)
        for (int li : la.path) {
            if (li < 0 || li >= net.link_count())
                throw std::logic_error("release: link index out of range");
            bw_delta[li] += la.bw;
        }
    for (int n = 0; n < net.node_count(); ++n)
        if (net.nodes[n].cpu_used < cpu_delta[n] || net.nodes[n].sto_used < sto_delta[n])
            throw std::logic_error("release: ledger underflow on node " +
                                   std::to_string(n));
    for (int l = 0; l < net.link_count(); ++l)
        if (net.links[l].bw_used < bw_delta[l])
            throw std::logic_error("release: ledger underflow on link " +
                                   std::to_string(l));
    for (int n = 0; n < net.node_count(); ++n) {
        net.nodes[n].cpu_used -= cpu_delta[n];
        net.nodes[n].sto_used -= sto_delta[n];
    }
    for (int l = 0; l < net.link_count(); ++l)
        net.links[l].bw_used -= bw_delta[l];
}

EmbedResult EmbeddingEngine::embed_request(const VirtualRequest& vnr,
                                           NodeMapper& mapper) {
    if (active_.count(vnr.request_id))
        throw std::logic_error("embed_request: request " +
                               std::to_string(vnr.request_id) + " already active");

    SubstrateNetwork& net = *net_;
    const int vn_count = static_cast<int>(vnr.nodes.size());

    // Node mapping stage: no ledger mutation yet.
    std::vector<int> node_map(vn_count, -1);
    for (int v = 0; v < vn_count; ++v) {
        const std::optional<int> pick = mapper.select_node(net, vnr, node_map, v);
        if (!pick)
            return {std::nullopt, RejectReason::no_feasible_node};
        const int sn = *pick;
        if (sn < 0 || sn >= net.node_count() ||
            std::find(node_map.begin(), node_map.end(), sn) != node_map.end() ||
            !node_feasible(net, sn, vnr.nodes[v]))
            throw std::logic_error("embed_request: mapper returned invalid node " +
                                   std::to_string(sn));
        node_map[v] = sn;
    }

    // Link mapping stage: bandwidth is applied as each link routes so later
    // links of the same request see it, then unwound before the final commit.
    LedgerLog applied;
    std::vector<Embedding::LinkAssignment> link_paths(vnr.links.size());
    const std::vector<int> order = mapper.link_order(vnr);
    for (int vl : order) {
        const VirtualLink& link = vnr.links[vl];
        const int src = node_map[link.from];
        const int dst = node_map[link.to];
        const auto path = mapper.route_link(net, src, dst, link.bw_demand);
        if (!path || !path_feasible(net, *path, link.bw_demand)) {
            applied.undo(net);
            return {std::nullopt, RejectReason::no_feasible_path};
        }
        for (int li : *path) {
            net.links[li].bw_used += link.bw_demand;
            applied.link_bw.push_back({li, link.bw_demand});
        }
        link_paths[vl] = {*path, link.bw_demand};
    }
    applied.undo(net);

    Embedding emb;
    emb.request_id = vnr.request_id;
    emb.nodes.reserve(vn_count);
    for (int v = 0; v < vn_count; ++v)
        emb.nodes.push_back({node_map[v], vnr.nodes[v].cpu_demand,
                             vnr.nodes[v].sto_demand,
                             vnr.nodes[v].security_requirement});
    emb.links = std::move(link_paths);
    emb.revenue = revenue(vnr);
    emb.cost = cost(emb);

    commit(net, emb);
    auto [it, inserted] = active_.emplace(vnr.request_id, std::move(emb));
    (void)inserted;
    return {it->second, RejectReason::none};
}

bool EmbeddingEngine::is_active(std::int64_t request_id) const {
    return active_.count(request_id) > 0;
}

void EmbeddingEngine::release_request(std::int64_t request_id) {
    auto it = active_.find(request_id);
    if (it == active_.end())
        throw std::logic_error("release_request: request " +
                               std::to_string(request_id) + " not active");
    release(*net_, it->second);
    active_.erase(it);
}

namespace {

// Greedily route vnr's links in the given order on a scratch network whose
// nodes are already chosen. Fills paths and returns true on success.
bool route_all(SubstrateNetwork& scratch, const VirtualRequest& vnr,
               const std::vector<int>& node_map, const std::vector<int>& order,
               std::vector<Embedding::LinkAssignment>& paths) {
    for (int vl : order) {
        const VirtualLink& link = vnr.links[vl];
        const auto path = bfs_link_map(scratch, node_map[link.from],
                                       node_map[link.to], link.bw_demand);
        if (!path)
            return false;
        for (int li : *path)
            scratch.links[li].bw_used += link.bw_demand;
        paths[vl] = {*path, link.bw_demand};
    }
    return true;
}

} // namespace

OracleResult brute_force_feasible(const SubstrateNetwork& net,
                                  const VirtualRequest& vnr) {
    const int vn = static_cast<int>(vnr.nodes.size());
    if (vn > 4 || net.node_count() > 8)
        throw std::invalid_argument(
            "brute_force_feasible: instance above size guard");

    std::vector<int> node_map(vn, -1);
    std::vector<char> used(net.nodes.size(), 0);
    std::vector<int> order(vnr.links.size());
    std::iota(order.begin(), order.end(), 0);

    OracleResult result;
    auto try_orders = [&]() {
        std::vector<int> perm = order;
        do {
            SubstrateNetwork scratch = net;
            std::vector<Embedding::LinkAssignment> paths(vnr.links.size());
            if (route_all(scratch, vnr, node_map, perm, paths)) {
                Embedding emb;
                emb.request_id = vnr.request_id;
                for (int v = 0; v < vn; ++v)
                    emb.nodes.push_back({node_map[v], vnr.nodes[v].cpu_demand,
                                         vnr.nodes[v].sto_demand,
                                         vnr.nodes[v].security_requirement});
                emb.links = std::move(paths);
                emb.revenue = revenue(vnr);
                emb.cost = cost(emb);
                result = {true, std::move(emb)};
                return true;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };

    auto assign = [&](auto&& self, int v) -> bool {
        if (v == vn)
            return try_orders();
        for (int sn = 0; sn < net.node_count(); ++sn) {
            if (used[sn] || !node_feasible(net, sn, vnr.nodes[v]))
                continue;
            used[sn] = 1;
            node_map[v] = sn;
            if (self(self, v + 1))
                return true;
            used[sn] = 0;
            node_map[v] = -1;
        }
        return false;
    };
    assign(assign, 0);
    return result;
}

} // namespace vnesim
