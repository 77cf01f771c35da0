#ifndef VNESIM_EMBEDDING_HPP
#define VNESIM_EMBEDDING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vnesim/network.hpp"

namespace vnesim {

/// A committed mapping of one request. Carries the resource amounts alongside
/// the node map and link paths; commit and release work from the embedding
/// alone.
struct Embedding {
    struct NodeAssignment {
        int substrate_node = -1;
        Resource cpu = 0;
        Resource sto = 0;
        int security_requirement = 0;

        bool operator==(const NodeAssignment&) const = default;
    };
    struct LinkAssignment {
        std::vector<int> path; // substrate link indices, in hop order
        Resource bw = 0;

        bool operator==(const LinkAssignment&) const = default;
    };

    std::int64_t request_id = 0;
    std::vector<NodeAssignment> nodes; // per virtual node, in declaration order
    std::vector<LinkAssignment> links; // per virtual link, in declaration order
    Resource revenue = 0;
    Resource cost = 0;

    bool operator==(const Embedding&) const = default;
};

enum class RejectReason { none, no_feasible_node, no_feasible_path };

struct EmbedResult {
    std::optional<Embedding> embedding;
    RejectReason reject = RejectReason::none;

    bool accepted() const { return embedding.has_value(); }
};

/// Strategy seam for node selection. Implementations must only return nodes
/// that pass node_feasible and are unused by the current request; the engine
/// re-verifies and treats a violation as a bug in the strategy.
class NodeMapper {
public:
    virtual ~NodeMapper() = default;

    // Substrate node for virtual node vn_index, or nullopt to abstain.
    // node_map holds earlier placements of this request (-1 when unmapped).
    virtual std::optional<int> select_node(const SubstrateNetwork& net,
                                           const VirtualRequest& vnr,
                                           const std::vector<int>& node_map,
                                           int vn_index) = 0;

    // Order in which the request's links are routed (indices into vnr.links).
    virtual std::vector<int> link_order(const VirtualRequest& vnr) const;

    // Route one virtual link; defaults to minimum-hop BFS.
    virtual std::optional<std::vector<int>> route_link(const SubstrateNetwork& net,
                                                       int src, int dst,
                                                       Resource demand) const;
};

// Minimum-hop path among paths whose every link has residual bandwidth >=
// demand, found by BFS over the filtered subgraph with neighbors explored in
// ascending index order. nullopt when src and dst are disconnected there.
std::optional<std::vector<int>> bfs_link_map(const SubstrateNetwork& net,
                                             int src, int dst, Resource demand);

// Add every node demand and per-path link demand to the ledgers, re-verifying
// all embedding constraints first; throws std::logic_error (and leaves the
// network untouched) if any check fails.
void commit(SubstrateNetwork& net, const Embedding& emb);
// Subtract exactly the amounts commit added.
void release(SubstrateNetwork& net, const Embedding& emb);

/// Drives the embedding lifecycle against one substrate network: maps nodes
/// through a strategy, maps links via BFS, commits atomically or rolls back,
/// and releases on departure.
class EmbeddingEngine {
public:
    explicit EmbeddingEngine(SubstrateNetwork& net) : net_(&net) {}

    // On rejection the network state is exactly its pre-call state.
    EmbedResult embed_request(const VirtualRequest& vnr, NodeMapper& mapper);

    bool is_active(std::int64_t request_id) const;
    void release_request(std::int64_t request_id);

    const SubstrateNetwork& network() const { return *net_; }
    const std::map<std::int64_t, Embedding>& active() const { return active_; }

private:
    SubstrateNetwork* net_;
    std::map<std::int64_t, Embedding> active_;
};

struct OracleResult {
    bool feasible = false;
    std::optional<Embedding> witness;
};

// Exhaustive feasibility oracle for tiny instances (request <= 4 nodes,
// substrate <= 8 nodes): enumerates every injective node mapping satisfying
// the node constraints and, for each, every virtual-link routing order with
// greedy BFS routing. Verification aid, not a production embedder.
OracleResult brute_force_feasible(const SubstrateNetwork& net,
                                  const VirtualRequest& vnr);

} // namespace vnesim

#endif
