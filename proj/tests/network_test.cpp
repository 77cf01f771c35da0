#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "test_util.hpp"
#include "vnesim/network.hpp"

using namespace vnesim;

TEST_CASE("residual cpu subtracts embedded demands") {
    SubstrateNetwork net;
    net.add_node(100, 60, 3);
    net.nodes[0].cpu_used = 30 + 20;
    CHECK(residual_cpu(net, 0) == 50);

    net.nodes[0].cpu_used = 0;
    CHECK(residual_cpu(net, 0) == 100);

    SubstrateNetwork full;
    full.add_node(80, 10, 1);
    full.nodes[0].cpu_used = 80;
    CHECK(residual_cpu(full, 0) == 0);

    CHECK_THROWS_AS(residual_cpu(net, 5), std::out_of_range);
    CHECK_THROWS_AS(residual_cpu(net, -1), std::out_of_range);
}

TEST_CASE("residual sto subtracts embedded demands") {
    SubstrateNetwork net;
    net.add_node(10, 60, 3);
    net.nodes[0].sto_used = 10 + 15;
    CHECK(residual_sto(net, 0) == 35);

    net.nodes[0].sto_used = 0;
    net.nodes[0].sto_capacity = 50;
    CHECK(residual_sto(net, 0) == 50);
    net.nodes[0].sto_used = 50;
    CHECK(residual_sto(net, 0) == 0);
}

TEST_CASE("residual bw sums demands routed across the link") {
    SubstrateNetwork net;
    net.add_node(1, 1, 0);
    net.add_node(1, 1, 0);
    const int l = net.add_link(0, 1, 100);
    net.links[l].bw_used = 25 + 25;
    CHECK(residual_bw(net, l) == 50);

    net.links[l].bw_used = 0;
    net.links[l].bw_capacity = 70;
    CHECK(residual_bw(net, l) == 70);
    net.links[l].bw_used = 70;
    CHECK(residual_bw(net, l) == 0);

    CHECK_THROWS_AS(residual_bw(net, 3), std::out_of_range);
}

TEST_CASE("node_feasible checks cpu, storage and security together") {
    SubstrateNetwork net;
    net.add_node(50, 40, 2);

    CHECK(node_feasible(net, 0, {0, 30, 30, 2}));

    net.nodes[0].security_level = 1;
    CHECK_FALSE(node_feasible(net, 0, {0, 30, 30, 2}));

    net.nodes[0].security_level = 3;
    CHECK(node_feasible(net, 0, {0, 50, 40, 0})); // equality boundary
    CHECK_FALSE(node_feasible(net, 0, {0, 51, 40, 0}));
}

TEST_CASE("node_feasible is monotone in the demands") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Resource> d(0, 60);
    std::uniform_int_distribution<int> g(0, 3);
    SubstrateNetwork net;
    net.add_node(50, 40, 2);
    for (int i = 0; i < 500; ++i) {
        VirtualNode vn{0, d(rng), d(rng), g(rng)};
        if (!node_feasible(net, 0, vn))
            continue;
        VirtualNode weaker{0, std::max<Resource>(0, vn.cpu_demand - 1),
                           std::max<Resource>(0, vn.sto_demand - 1),
                           std::max(0, vn.security_requirement - 1)};
        CHECK(node_feasible(net, 0, weaker));
    }
}

TEST_CASE("path_feasible requires every link to cover the demand") {
    // 0-1-2 path, plus a disconnected pair 3-4.
    auto net = test::make_net({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}},
                              {{0, 1, 50}, {1, 2, 50}, {3, 4, 50}});
    const std::vector<int> path{0, 1};
    CHECK(path_feasible(net, path, 50)); // equality boundary

    net.links[1].bw_used = 20; // residuals {50, 30}
    CHECK_FALSE(path_feasible(net, path, 40));

    CHECK(path_feasible(net, std::vector<int>{}, 999)); // vacuous empty path

    const std::vector<int> disconnected{0, 2};
    CHECK_THROWS_AS(path_feasible(net, disconnected, 1), std::invalid_argument);
}

TEST_CASE("path_feasible equals the per-link residual conjunction") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto net = test::random_connected_net(rng, 8);
        for (SubstrateLink& l : net.links)
            l.bw_used = std::uniform_int_distribution<Resource>(0, l.bw_capacity)(rng);
        // Random walk without repeating links.
        std::vector<int> path;
        int at = std::uniform_int_distribution<int>(0, net.node_count() - 1)(rng);
        for (int step = 0; step < 4; ++step) {
            const auto& nbrs = net.neighbors(at);
            const auto& [nbr, li] =
                nbrs[std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng)];
            if (std::find(path.begin(), path.end(), li) != path.end())
                break;
            path.push_back(li);
            at = nbr;
        }
        const Resource demand = std::uniform_int_distribution<Resource>(0, 100)(rng);
        bool all = true;
        for (int li : path)
            all = all && residual_bw(net, li) >= demand;
        CHECK(path_feasible(net, path, demand) == all);
    }
}

TEST_CASE("substrate graph stays simple and consistent") {
    SubstrateNetwork net;
    net.add_node(1, 1, 0);
    net.add_node(1, 1, 0);
    net.add_link(0, 1, 10);
    CHECK_THROWS_AS(net.add_link(0, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(net.add_link(1, 0, 5), std::invalid_argument);
    CHECK(net.link_between(0, 1) == 0);
    CHECK(net.link_between(1, 0) == 0);
    CHECK(net.connected());

    net.add_node(1, 1, 0);
    CHECK_FALSE(net.connected());
    CHECK(net.link_between(0, 2) == -1);
}
