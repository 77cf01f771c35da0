#ifndef VNESIM_METRICS_HPP
#define VNESIM_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vnesim/embedding.hpp"
#include "vnesim/network.hpp"

namespace vnesim {

// Total resources requested: node CPU + storage plus link bandwidth.
Resource revenue(const VirtualRequest& vnr);

// Resources actually consumed: node CPU + storage plus bandwidth times the
// hop count of each mapped path. Equals revenue when every path is one hop.
Resource cost(const Embedding& emb);

struct MetricsWindow {
    double window_end_time = 0.0;
    std::int64_t arrivals = 0;     // cumulative
    std::int64_t acceptances = 0;  // cumulative
    double acc_ratio = 0.0;        // acceptances / arrivals
    Resource cum_revenue = 0;
    Resource cum_cost = 0;
    double avg_revenue = 0.0;      // cum_revenue / elapsed time
    double rc_ratio = 1.0;         // cum_revenue / cum_cost, sentinel 1.0 when empty
    bool rc_defined = false;

    bool operator==(const MetricsWindow&) const = default;
};

/// Running evaluation indicators sampled at fixed windows. The first recorded
/// event fixes the time origin; windows close as later events cross their
/// boundaries. Record times must be non-decreasing.
class MetricsSeries {
public:
    explicit MetricsSeries(double window_length = 100.0);

    void record_accepted(double t, Resource rev, Resource cst);
    void record_rejected(double t);

    // Closed windows plus the final in-progress window (when any event was
    // recorded). Empty when nothing was recorded.
    std::vector<MetricsWindow> windows() const;

    std::int64_t arrivals() const { return arrivals_; }
    std::int64_t acceptances() const { return acceptances_; }

private:
    void advance_to(double t);
    MetricsWindow snapshot(double window_end) const;

    double window_length_;
    bool started_ = false;
    double origin_ = 0.0;
    double last_time_ = 0.0;
    std::int64_t next_window_ = 0; // first window index not yet closed
    std::int64_t arrivals_ = 0;
    std::int64_t acceptances_ = 0;
    Resource cum_revenue_ = 0;
    Resource cum_cost_ = 0;
    std::vector<MetricsWindow> closed_;
};

// One row per window under the fixed header; byte-deterministic.
void export_csv(const std::vector<MetricsWindow>& windows,
                const std::filesystem::path& destination);

inline const char* metrics_csv_header() {
    return "window_end_time,arrivals,acceptances,acc_ratio,cum_revenue,"
           "cum_cost,avg_revenue,rc_ratio,rc_defined";
}

} // namespace vnesim

#endif
