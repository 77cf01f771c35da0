#ifndef VNESIM_FEATURES_HPP
#define VNESIM_FEATURES_HPP

#include <array>
#include <span>
#include <vector>

#include "vnesim/network.hpp"

namespace vnesim {

/// All-pairs shortest hop counts on a substrate topology. Computed once per
/// substrate; residuals never change distances.
class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(int n, std::vector<int> hops) : n_(n), hops_(std::move(hops)) {}

    int size() const { return n_; }
    int operator()(int a, int b) const { return hops_[static_cast<std::size_t>(a) * n_ + b]; }

private:
    int n_ = 0;
    std::vector<int> hops_;
};

DistanceTable floyd_warshall(const SubstrateNetwork& net);

// Mean hop distance from a candidate node to the substrate nodes already
// holding this request, with denominator |mapped| + 1.
double avg_dst(const DistanceTable& dist, int n, std::span<const int> mapped);

// Per-node feature columns: residual CPU, residual storage, security level,
// average distance to the mapped set. Raw values plus a per-feature min-max
// normalization into [0,1]; a feature constant across nodes maps to 0.5.
struct FeatureMatrix {
    std::vector<std::array<double, 4>> raw;
    std::vector<std::array<double, 4>> normalized;

    int node_count() const { return static_cast<int>(raw.size()); }
};

FeatureMatrix build_feature_matrix(const SubstrateNetwork& net,
                                   std::span<const int> mapped,
                                   const DistanceTable& dist);

} // namespace vnesim

#endif
