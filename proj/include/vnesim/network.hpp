#ifndef VNESIM_NETWORK_HPP
#define VNESIM_NETWORK_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vnesim {

// Integer resource units; ledger arithmetic is exact.
using Resource = std::int64_t;

struct SubstrateNode {
    int id = 0;
    Resource cpu_capacity = 0;
    Resource sto_capacity = 0;
    int security_level = 0; // grade in {0,1,2,3}
    Resource cpu_used = 0;
    Resource sto_used = 0;

    bool operator==(const SubstrateNode&) const = default;
};

struct SubstrateLink {
    int a = 0; // endpoint, a < b
    int b = 0;
    Resource bw_capacity = 0;
    Resource bw_used = 0;

    bool operator==(const SubstrateLink&) const = default;
};

/// Undirected simple graph with per-node CPU/storage/security and per-link
/// bandwidth capacities plus the residual-usage ledgers.
class SubstrateNetwork {
public:
    std::vector<SubstrateNode> nodes;
    std::vector<SubstrateLink> links;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int link_count() const { return static_cast<int>(links.size()); }

    int add_node(Resource cpu, Resource sto, int security_level);
    // Rejects self-loops and duplicate pairs; returns the new link index.
    int add_link(int a, int b, Resource bw);

    // (neighbor, link index) pairs sorted by neighbor id.
    const std::vector<std::pair<int, int>>& neighbors(int n) const;
    // Link index for the unordered pair, or -1.
    int link_between(int a, int b) const;

    bool connected() const;

    bool operator==(const SubstrateNetwork& other) const {
        return nodes == other.nodes && links == other.links;
    }

private:
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

struct VirtualNode {
    int id = 0;
    Resource cpu_demand = 0;
    Resource sto_demand = 0;
    int security_requirement = 0; // minimum substrate grade, in {0,1,2,3}

    bool operator==(const VirtualNode&) const = default;
};

struct VirtualLink {
    int from = 0;
    int to = 0;
    Resource bw_demand = 0;

    bool operator==(const VirtualLink&) const = default;
};

struct VirtualRequest {
    std::int64_t request_id = 0;
    std::vector<VirtualNode> nodes;
    std::vector<VirtualLink> links;
    double arrival_time = 0.0;
    double lifetime = 0.0;

    bool operator==(const VirtualRequest&) const = default;
};

// Remaining capacity after subtracting everything currently embedded.
Resource residual_cpu(const SubstrateNetwork& net, int n);
Resource residual_sto(const SubstrateNetwork& net, int n);
Resource residual_bw(const SubstrateNetwork& net, int l);

// True iff the node covers the CPU, storage and security requirements.
bool node_feasible(const SubstrateNetwork& net, int sn, const VirtualNode& vn);

// True iff every link on the path has residual bandwidth >= demand.
// `path` must be a connected sequence of link indices (empty path is fine).
bool path_feasible(const SubstrateNetwork& net, std::span<const int> path,
                   Resource demand);

} // namespace vnesim

#endif
