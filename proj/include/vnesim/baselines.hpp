#ifndef VNESIM_BASELINES_HPP
#define VNESIM_BASELINES_HPP

#include <optional>
#include <vector>

#include "vnesim/embedding.hpp"
#include "vnesim/features.hpp"
#include "vnesim/network.hpp"

namespace vnesim {

// Resource-greedy ranking: among feasible nodes not in `used`, the argmax of
// residual CPU times the summed residual bandwidth of adjacent links; lowest
// index breaks ties.
std::optional<int> greedy_rank(const SubstrateNetwork& net, const VirtualNode& vn,
                               const std::vector<char>& used);

/// Per-criterion weights for the ideal-point ranking. All criteria are
/// benefit-type: degree centrality, closeness centrality, resource capability
/// (residual CPU + storage + adjacent bandwidth) and the security level.
struct RankingCriteria {
    double degree_weight = 1.0;
    double closeness_weight = 1.0;
    double resource_weight = 1.0;
    double security_weight = 0.0;

    // Trust-aware preset: the security criterion participates in the ranking.
    static RankingCriteria trust_aware() { return {1.0, 1.0, 1.0, 1.0}; }
    static RankingCriteria non_trust_aware() { return {1.0, 1.0, 1.0, 0.0}; }

    void validate() const;
};

// TOPSIS-style selection: min-max normalizes each criterion over the feasible
// candidates, weights them, and ranks by relative closeness d-/(d+ + d-) to
// the ideal-best/ideal-worst points (Euclidean); closeness is 1 when both
// distances vanish. Lowest index breaks ties.
std::optional<int> topsis_rank(const SubstrateNetwork& net, const VirtualNode& vn,
                               const std::vector<char>& used,
                               const RankingCriteria& criteria,
                               const DistanceTable& dist);

// Up to k loop-free paths in non-decreasing hop count over the subgraph of
// links with residual bandwidth >= demand (Yen-style enumeration with BFS
// shortest paths; candidates ordered by hops then lexicographic node
// sequence). Paths are returned as link-index sequences.
std::vector<std::vector<int>> k_shortest_paths(const SubstrateNetwork& net,
                                               int src, int dst, int k,
                                               Resource demand);

/// BaseLine-style mapper: greedy resource ranking with BFS link mapping and
/// largest-demand-first link ordering.
class GreedyMapper : public NodeMapper {
public:
    std::optional<int> select_node(const SubstrateNetwork& net,
                                   const VirtualRequest& vnr,
                                   const std::vector<int>& node_map,
                                   int vn_index) override;
    std::vector<int> link_order(const VirtualRequest& vnr) const override;
};

/// TOPSIS-ranked mapper with k-shortest-path link mapping.
class TopsisMapper : public NodeMapper {
public:
    TopsisMapper(const SubstrateNetwork& substrate, RankingCriteria criteria,
                 int ksp_k = 5);

    std::optional<int> select_node(const SubstrateNetwork& net,
                                   const VirtualRequest& vnr,
                                   const std::vector<int>& node_map,
                                   int vn_index) override;
    std::vector<int> link_order(const VirtualRequest& vnr) const override;
    std::optional<std::vector<int>> route_link(const SubstrateNetwork& net,
                                               int src, int dst,
                                               Resource demand) const override;

private:
    RankingCriteria criteria_;
    DistanceTable dist_;
    int ksp_k_;
};

// Shared largest-demand-first ordering (stable on equal demands).
std::vector<int> demand_descending_link_order(const VirtualRequest& vnr);

} // namespace vnesim

#endif
