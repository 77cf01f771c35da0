#include "vnesim/network.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace vnesim {

namespace {

void check_node_index(const SubstrateNetwork& net, int n, const char* who) {
    if (n < 0 || n >= net.node_count())
        throw std::out_of_range(std::string(who) + ": node index " +
                                std::to_string(n) + " out of range");
}

void check_link_index(const SubstrateNetwork& net, int l, const char* who) {
    if (l < 0 || l >= net.link_count())
        throw std::out_of_range(std::string(who) + ": link index " +
                                std::to_string(l) + " out of range");
}

} // namespace

int SubstrateNetwork::add_node(Resource cpu, Resource sto, int security_level) {
    const int id = node_count();
    nodes.push_back({id, cpu, sto, security_level, 0, 0});
    adjacency_.emplace_back();
    return id;
}

int SubstrateNetwork::add_link(int a, int b, Resource bw) {
    check_node_index(*this, a, "add_link");
    check_node_index(*this, b, "add_link");
    if (a == b)
        throw std::invalid_argument("add_link: self-loop on node " +
                                    std::to_string(a));
    if (link_between(a, b) >= 0)
        throw std::invalid_argument("add_link: duplicate link " +
                                    std::to_string(a) + "-" + std::to_string(b));
    if (a > b)
        std::swap(a, b);
    const int index = link_count();
    links.push_back({a, b, bw, 0});
    auto insert_sorted = [](std::vector<std::pair<int, int>>& adj, int nbr, int li) {
        auto pos = std::lower_bound(adj.begin(), adj.end(), std::make_pair(nbr, 0));
        adj.insert(pos, {nbr, li});
    };
    insert_sorted(adjacency_[a], b, index);
    insert_sorted(adjacency_[b], a, index);
    return index;
}

const std::vector<std::pair<int, int>>& SubstrateNetwork::neighbors(int n) const {
    check_node_index(*this, n, "neighbors");
    return adjacency_[n];
}

int SubstrateNetwork::link_between(int a, int b) const {
    check_node_index(*this, a, "link_between");
    check_node_index(*this, b, "link_between");
    for (const auto& [nbr, li] : adjacency_[a])
        if (nbr == b)
            return li;
    return -1;
}

bool SubstrateNetwork::connected() const {
    if (nodes.empty())
        return true;
    std::vector<char> seen(nodes.size(), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (const auto& [nbr, li] : adjacency_[u]) {
            (void)li;
            if (!seen[nbr]) {
                seen[nbr] = 1;
                ++reached;
                frontier.push(nbr);
            }
        }
    }
    return reached == node_count();
}

Resource residual_cpu(const SubstrateNetwork& net, int n) {
    check_node_index(net, n, "residual_cpu");
    return net.nodes[n].cpu_capacity - net.nodes[n].cpu_used;
}

Resource residual_sto(const SubstrateNetwork& net, int n) {
    check_node_index(net, n, "residual_sto");
    return net.nodes[n].sto_capacity - net.nodes[n].sto_used;
}

Resource residual_bw(const SubstrateNetwork& net, int l) {
    check_link_index(net, l, "residual_bw");
    return net.links[l].bw_capacity - net.links[l].bw_used;
}

bool node_feasible(const SubstrateNetwork& net, int sn, const VirtualNode& vn) {
    return residual_cpu(net, sn) >= vn.cpu_demand &&
           residual_sto(net, sn) >= vn.sto_demand &&
           net.nodes[sn].security_level >= vn.security_requirement;
}

bool path_feasible(const SubstrateNetwork& net, std::span<const int> path,
                   Resource demand) {
    for (int l : path)
        check_link_index(net, l, "path_feasible");
    // Consecutive links must share an endpoint.
    for (std::size_t i = 1; i < path.size(); ++i) {
        const SubstrateLink& prev = net.links[path[i - 1]];
        const SubstrateLink& cur = net.links[path[i]];
        const bool touch = prev.a == cur.a || prev.a == cur.b ||
                           prev.b == cur.a || prev.b == cur.b;
        if (!touch)
            throw std::invalid_argument("path_feasible: disconnected path");
    }
    for (int l : path)
        if (residual_bw(net, l) < demand)
            return false;
    return true;
}

} // namespace vnesim
