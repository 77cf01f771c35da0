#include "vnesim/features.hpp"

#include <algorithm>
#include <limits>

namespace vnesim {

DistanceTable floyd_warshall(const SubstrateNetwork& net) {
    const int n = net.node_count();
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<int> d(static_cast<std::size_t>(n) * n, inf);
    auto at = [&](int i, int j) -> int& { return d[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        at(i, i) = 0;
    for (const SubstrateLink& l : net.links) {
        at(l.a, l.b) = 1;
        at(l.b, l.a) = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const int dik = at(i, k);
            if (dik >= inf)
                continue;
            for (int j = 0; j < n; ++j)
                if (dik + at(k, j) < at(i, j))
                    at(i, j) = dik + at(k, j);
        }
    return DistanceTable(n, std::move(d));
}

double avg_dst(const DistanceTable& dist, int n, std::span<const int> mapped) {
    double sum = 0.0;
    for (int m : mapped)
        sum += dist(n, m);
    return sum / (static_cast<double>(mapped.size()) + 1.0);
}

FeatureMatrix build_feature_matrix(const SubstrateNetwork& net,
                                   std::span<const int> mapped,
                                   const DistanceTable& dist) {
    FeatureMatrix mf;
    const int n = net.node_count();
    mf.raw.resize(n);
    for (int k = 0; k < n; ++k) {
        mf.raw[k] = {static_cast<double>(residual_cpu(net, k)),
                     static_cast<double>(residual_sto(net, k)),
                     static_cast<double>(net.nodes[k].security_level),
                     avg_dst(dist, k, mapped)};
    }
    mf.normalized.resize(n);
    for (int f = 0; f < 4; ++f) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            lo = std::min(lo, mf.raw[k][f]);
            hi = std::max(hi, mf.raw[k][f]);
        }
        for (int k = 0; k < n; ++k)
            mf.normalized[k][f] = hi > lo ? (mf.raw[k][f] - lo) / (hi - lo) : 0.5;
    }
    return mf;
}

} // namespace vnesim
