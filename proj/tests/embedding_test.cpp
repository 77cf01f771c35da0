#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "test_util.hpp"
#include "vnesim/embedding.hpp"
#include "vnesim/metrics.hpp"

using namespace vnesim;

namespace {

// Lowest-index feasible unused node; abstains when none qualifies.
class FirstFitMapper : public NodeMapper {
public:
    std::optional<int> select_node(const SubstrateNetwork& net,
                                   const VirtualRequest& vnr,
                                   const std::vector<int>& node_map,
                                   int vn_index) override {
        for (int sn = 0; sn < net.node_count(); ++sn) {
            if (std::find(node_map.begin(), node_map.end(), sn) != node_map.end())
                continue;
            if (node_feasible(net, sn, vnr.nodes[vn_index]))
                return sn;
        }
        return std::nullopt;
    }
};

// Deliberately broken strategy: returns node 0 regardless of feasibility.
class BrokenMapper : public NodeMapper {
public:
    std::optional<int> select_node(const SubstrateNetwork&, const VirtualRequest&,
                                   const std::vector<int>&, int) override {
        return 0;
    }
};

SubstrateNetwork triangle(Resource cap = 50, int sl = 3, Resource bw = 50) {
    SubstrateNetwork net;
    for (int i = 0; i < 3; ++i)
        net.add_node(cap, cap, sl);
    net.add_link(0, 1, bw);
    net.add_link(1, 2, bw);
    net.add_link(0, 2, bw);
    return net;
}

VirtualRequest two_node_request(Resource node_demand, int sr, Resource bw_demand) {
    VirtualRequest vnr;
    vnr.request_id = 1;
    vnr.lifetime = 10.0;
    vnr.nodes = {{0, node_demand, node_demand, sr}, {1, node_demand, node_demand, sr}};
    vnr.links = {{0, 1, bw_demand}};
    return vnr;
}

// All simple src->dst paths in the residual-filtered subgraph, as hop counts.
void enumerate_paths(const SubstrateNetwork& net, int at, int dst, Resource demand,
                     std::vector<char>& visited, int hops, std::vector<int>& out) {
    if (at == dst) {
        out.push_back(hops);
        return;
    }
    for (const auto& [nbr, li] : net.neighbors(at)) {
        if (visited[nbr] || residual_bw(net, li) < demand)
            continue;
        visited[nbr] = 1;
        enumerate_paths(net, nbr, dst, demand, visited, hops + 1, out);
        visited[nbr] = 0;
    }
}

} // namespace

TEST_CASE("bfs_link_map follows the only path") {
    const auto net = test::make_net({{1, 1}, {1, 1}, {1, 1}},
                                    {{0, 1, 50}, {1, 2, 50}});
    const auto path = bfs_link_map(net, 0, 2, 25);
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<int>{0, 1});
}

TEST_CASE("bfs_link_map routes around a saturated link") {
    // Square 0-1-2-3-0; the direct 0-1 link lacks bandwidth.
    auto net = test::make_net({{1, 1}, {1, 1}, {1, 1}, {1, 1}},
                              {{0, 1, 50}, {1, 2, 50}, {2, 3, 50}, {3, 0, 50}});
    net.links[0].bw_used = 40; // residual 10
    const auto path = bfs_link_map(net, 0, 1, 25);
    REQUIRE(path.has_value());
    CHECK(*path == std::vector<int>{3, 2, 1}); // 0-3, 3-2, 2-1
}

TEST_CASE("bfs_link_map reports unreachable under demand") {
    const auto net = test::make_net({{1, 1}, {1, 1}, {1, 1}},
                                    {{0, 1, 50}, {1, 2, 50}});
    CHECK_FALSE(bfs_link_map(net, 0, 2, 100).has_value());
    CHECK_THROWS_AS(bfs_link_map(net, 1, 1, 5), std::invalid_argument);
}

TEST_CASE("bfs_link_map returns a minimum-hop feasible path") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        auto net = test::random_connected_net(rng, 8);
        for (SubstrateLink& l : net.links)
            l.bw_used = std::uniform_int_distribution<Resource>(0, l.bw_capacity)(rng);
        const int src = 0;
        const int dst = net.node_count() - 1;
        const Resource demand = std::uniform_int_distribution<Resource>(0, 80)(rng);

        std::vector<int> all_hops;
        std::vector<char> visited(net.node_count(), 0);
        visited[src] = 1;
        enumerate_paths(net, src, dst, demand, visited, 0, all_hops);

        const auto path = bfs_link_map(net, src, dst, demand);
        if (all_hops.empty()) {
            CHECK_FALSE(path.has_value());
        } else {
            REQUIRE(path.has_value());
            CHECK(path_feasible(net, *path, demand));
            CHECK(static_cast<int>(path->size()) ==
                  *std::min_element(all_hops.begin(), all_hops.end()));
        }
    }
}

TEST_CASE("embed_request accepts an easy request with a 1-hop path") {
    auto net = triangle();
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    const auto result = engine.embed_request(two_node_request(25, 1, 25), mapper);
    REQUIRE(result.accepted());
    const Embedding& emb = *result.embedding;
    CHECK(emb.links[0].path.size() == 1);
    CHECK(emb.revenue == 4 * 25 + 25);
    CHECK(emb.cost == emb.revenue);
    // Ledger reflects the commit.
    CHECK(residual_cpu(net, emb.nodes[0].substrate_node) == 25);
    CHECK(residual_bw(net, emb.links[0].path[0]) == 25);
}

TEST_CASE("embed_request rejects when no node meets the security grade") {
    auto net = triangle(50, 1, 50);
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    const auto result = engine.embed_request(two_node_request(25, 2, 25), mapper);
    CHECK_FALSE(result.accepted());
    CHECK(result.reject == RejectReason::no_feasible_node);
}

TEST_CASE("embed_request distinguishes path rejection and restores state") {
    // Two far nodes joined by a thin middle link.
    auto net = test::make_net({{50, 50}, {50, 50}, {50, 50}},
                              {{0, 1, 5}, {1, 2, 50}});
    // Make middle node infeasible for nodes so endpoints land on 0 and 2.
    net.nodes[1].cpu_used = 50;
    const SubstrateNetwork before = net;
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    const auto result = engine.embed_request(two_node_request(10, 0, 25), mapper);
    CHECK_FALSE(result.accepted());
    CHECK(result.reject == RejectReason::no_feasible_path);
    CHECK(net == before);
}

TEST_CASE("rejected embeddings leave the network byte-identical") {
    std::mt19937_64 rng(23);
    int rejected = 0;
    for (int trial = 0; trial < 300 && rejected < 120; ++trial) {
        auto net = test::random_connected_net(rng, 6, 0.3, 5, 40);
        EmbeddingEngine engine(net);
        FirstFitMapper mapper;
        const auto vnr = test::random_request(rng, trial, 2, 4, 60);
        const SubstrateNetwork before = net;
        const auto result = engine.embed_request(vnr, mapper);
        if (!result.accepted()) {
            ++rejected;
            CHECK(net == before);
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("accepted embeddings are injective and re-verified feasible") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        auto net = test::random_connected_net(rng, 7);
        EmbeddingEngine engine(net);
        FirstFitMapper mapper;
        const auto vnr = test::random_request(rng, trial, 2, 4);
        const SubstrateNetwork before = net;
        const auto result = engine.embed_request(vnr, mapper);
        if (!result.accepted())
            continue;
        const Embedding& emb = *result.embedding;
        std::vector<int> seen;
        for (const auto& na : emb.nodes) {
            CHECK(std::find(seen.begin(), seen.end(), na.substrate_node) == seen.end());
            seen.push_back(na.substrate_node);
            // Constraints held at commit time (checked against the pre state).
            CHECK(residual_cpu(before, na.substrate_node) >= na.cpu);
            CHECK(residual_sto(before, na.substrate_node) >= na.sto);
            CHECK(before.nodes[na.substrate_node].security_level >=
                  na.security_requirement);
        }
        for (std::size_t vl = 0; vl < emb.links.size(); ++vl) {
            // Paths connect the mapped endpoints.
            const auto& path = emb.links[vl].path;
            const int src = emb.nodes[vnr.links[vl].from].substrate_node;
            const int dst = emb.nodes[vnr.links[vl].to].substrate_node;
            REQUIRE(!path.empty());
            int at = src;
            for (int li : path) {
                const SubstrateLink& l = net.links[li];
                CHECK((l.a == at || l.b == at));
                at = l.a == at ? l.b : l.a;
            }
            CHECK(at == dst);
        }
    }
}

TEST_CASE("commit and release are exact inverses") {
    auto net = triangle();
    const SubstrateNetwork before = net;
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    const auto result = engine.embed_request(two_node_request(25, 1, 25), mapper);
    REQUIRE(result.accepted());
    engine.release_request(1);
    CHECK(net == before);
    CHECK_FALSE(engine.is_active(1));
}

TEST_CASE("links shared by two requests accumulate bandwidth") {
    auto net = triangle();
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    auto first = two_node_request(10, 0, 20);
    auto second = two_node_request(10, 0, 15);
    second.request_id = 2;
    REQUIRE(engine.embed_request(first, mapper).accepted());
    REQUIRE(engine.embed_request(second, mapper).accepted());
    // First-fit puts both requests on nodes 0 and 1, sharing link 0-1.
    CHECK(net.links[0].bw_used == 35);
}

TEST_CASE("state errors: unknown release and double embed") {
    auto net = triangle();
    EmbeddingEngine engine(net);
    FirstFitMapper mapper;
    CHECK_THROWS_AS(engine.release_request(99), std::logic_error);
    REQUIRE(engine.embed_request(two_node_request(5, 0, 5), mapper).accepted());
    CHECK_THROWS_AS(engine.embed_request(two_node_request(5, 0, 5), mapper),
                    std::logic_error);
    engine.release_request(1);
    CHECK_THROWS_AS(engine.release_request(1), std::logic_error);
}

TEST_CASE("a strategy returning infeasible nodes cannot corrupt the ledger") {
    auto net = triangle(50, 0, 50);
    const SubstrateNetwork before = net;
    EmbeddingEngine engine(net);
    BrokenMapper broken;
    auto vnr = two_node_request(10, 0, 5);
    vnr.nodes[0].security_requirement = 3; // node 0 cannot satisfy this
    CHECK_THROWS_AS(engine.embed_request(vnr, broken), std::logic_error);
    CHECK(net == before);
}

TEST_CASE("commit rejects malformed embeddings without touching the ledger") {
    auto net = test::make_net({{50, 50}, {50, 50}, {50, 50}, {50, 50}},
                              {{0, 1, 50}, {2, 3, 50}});
    const SubstrateNetwork before = net;

    Embedding dup;
    dup.request_id = 1;
    dup.nodes = {{0, 5, 5, 0}, {0, 5, 5, 0}}; // not injective
    CHECK_THROWS_AS(commit(net, dup), std::logic_error);
    CHECK(net == before);

    Embedding torn;
    torn.request_id = 2;
    torn.nodes = {{0, 5, 5, 0}, {3, 5, 5, 0}};
    torn.links = {{{0, 1}, 5}}; // links 0-1 and 2-3 do not touch
    CHECK_THROWS_AS(commit(net, torn), std::logic_error);
    CHECK(net == before);
}

TEST_CASE("brute force oracle confirms the easy triangle instance") {
    auto net = triangle();
    const auto oracle = brute_force_feasible(net, two_node_request(25, 1, 25));
    CHECK(oracle.feasible);
    REQUIRE(oracle.witness.has_value());
    SubstrateNetwork scratch = net;
    commit(scratch, *oracle.witness); // witness passes the independent re-check
}

TEST_CASE("brute force oracle rejects requests larger than the substrate") {
    auto net = test::make_net({{90, 90}, {90, 90}, {90, 90}},
                              {{0, 1, 90}, {1, 2, 90}});
    VirtualRequest vnr;
    vnr.request_id = 7;
    vnr.lifetime = 1.0;
    for (int v = 0; v < 4; ++v)
        vnr.nodes.push_back({v, 1, 1, 0});
    for (int v = 1; v < 4; ++v)
        vnr.links.push_back({0, v, 1});
    CHECK_FALSE(brute_force_feasible(net, vnr).feasible);
}

TEST_CASE("brute force oracle enforces its size guard") {
    std::mt19937_64 rng(31);
    const auto big = test::random_connected_net(rng, 9);
    const auto vnr = test::random_request(rng, 1, 2, 2);
    CHECK_THROWS_AS(brute_force_feasible(big, vnr), std::invalid_argument);
}

TEST_CASE("engine acceptance implies oracle feasibility on tiny instances") {
    std::mt19937_64 rng(37);
    int accepted = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto net = test::random_connected_net(rng, 6, 0.4, 10, 60);
        EmbeddingEngine engine(net);
        FirstFitMapper mapper;
        const auto vnr = test::random_request(rng, trial, 2, 4, 40);
        const SubstrateNetwork before = net;
        if (engine.embed_request(vnr, mapper).accepted()) {
            ++accepted;
            CHECK(brute_force_feasible(before, vnr).feasible);
        }
    }
    CHECK(accepted > 0);
}
