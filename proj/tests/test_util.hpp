#ifndef VNESIM_TESTS_TEST_UTIL_HPP
#define VNESIM_TESTS_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "vnesim/network.hpp"

namespace vnesim::test {

// Substrate where node i has the given capacities; links from (a,b,bw) triples.
inline SubstrateNetwork make_net(
    const std::vector<std::array<Resource, 2>>& node_caps,
    const std::vector<std::array<Resource, 3>>& links, int security_level = 3) {
    SubstrateNetwork net;
    for (const auto& caps : node_caps)
        net.add_node(caps[0], caps[1], security_level);
    for (const auto& l : links)
        net.add_link(static_cast<int>(l[0]), static_cast<int>(l[1]), l[2]);
    return net;
}

// Uniform substrate: n nodes with identical capacities, given links.
inline SubstrateNetwork uniform_net(int n, Resource cpu, Resource sto, int sl,
                                    const std::vector<std::array<Resource, 3>>& links) {
    SubstrateNetwork net;
    for (int i = 0; i < n; ++i)
        net.add_node(cpu, sto, sl);
    for (const auto& l : links)
        net.add_link(static_cast<int>(l[0]), static_cast<int>(l[1]), l[2]);
    return net;
}

// Random connected substrate for property tests.
inline SubstrateNetwork random_connected_net(std::mt19937_64& rng, int n,
                                             double extra_link_prob = 0.4,
                                             Resource cap_lo = 20,
                                             Resource cap_hi = 100) {
    SubstrateNetwork net;
    std::uniform_int_distribution<Resource> cap(cap_lo, cap_hi);
    std::uniform_int_distribution<int> sl(0, 3);
    for (int i = 0; i < n; ++i)
        net.add_node(cap(rng), cap(rng), sl(rng));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 1; i < n; ++i) {
        const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
        net.add_link(j, i, cap(rng));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (net.link_between(i, j) < 0 && unit(rng) < extra_link_prob)
                net.add_link(i, j, cap(rng));
    return net;
}

// Connected random request with demands in [0, demand_hi].
inline VirtualRequest random_request(std::mt19937_64& rng, std::int64_t id,
                                     int min_nodes, int max_nodes,
                                     Resource demand_hi = 30, int sr_hi = 3) {
    VirtualRequest vnr;
    vnr.request_id = id;
    vnr.arrival_time = 0.0;
    vnr.lifetime = 1.0;
    const int n = std::uniform_int_distribution<int>(min_nodes, max_nodes)(rng);
    std::uniform_int_distribution<Resource> demand(0, demand_hi);
    std::uniform_int_distribution<int> sr(0, sr_hi);
    for (int v = 0; v < n; ++v)
        vnr.nodes.push_back({v, demand(rng), demand(rng), sr(rng)});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int v = 1; v < n; ++v) {
        const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
        vnr.links.push_back({u, v, demand(rng)});
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const bool present = [&] {
                for (const VirtualLink& l : vnr.links)
                    if ((l.from == a && l.to == b) || (l.from == b && l.to == a))
                        return true;
                return false;
            }();
            if (!present && unit(rng) < 0.3)
                vnr.links.push_back({a, b, demand(rng)});
        }
    return vnr;
}

} // namespace vnesim::test

#endif
