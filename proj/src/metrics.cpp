#include "vnesim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vnesim {

Resource revenue(const VirtualRequest& vnr) {
    Resource r = 0;
    for (const VirtualNode& n : vnr.nodes)
        r += n.cpu_demand + n.sto_demand;
    for (const VirtualLink& l : vnr.links)
        r += l.bw_demand;
    return r;
}

Resource cost(const Embedding& emb) {
    Resource c = 0;
    for (const auto& na : emb.nodes)
        c += na.cpu + na.sto;
    for (const auto& la : emb.links)
        c += la.bw * static_cast<Resource>(la.path.size());
    return c;
}

MetricsSeries::MetricsSeries(double window_length)
    : window_length_(window_length) {
    if (window_length <= 0.0)
        throw std::invalid_argument("MetricsSeries: window length must be > 0");
}

void MetricsSeries::advance_to(double t) {
    if (!started_) {
        started_ = true;
        origin_ = t;
        last_time_ = t;
        return;
    }
    if (t < last_time_)
        throw std::logic_error("MetricsSeries: time regression");
    last_time_ = t;
    const auto window_of = static_cast<std::int64_t>((t - origin_) / window_length_);
    while (next_window_ < window_of) {
        closed_.push_back(snapshot(origin_ + (next_window_ + 1) * window_length_));
        ++next_window_;
    }
}

MetricsWindow MetricsSeries::snapshot(double window_end) const {
    MetricsWindow w;
    w.window_end_time = window_end;
    w.arrivals = arrivals_;
    w.acceptances = acceptances_;
    w.acc_ratio = arrivals_ > 0
                      ? static_cast<double>(acceptances_) / static_cast<double>(arrivals_)
                      : 0.0;
    w.cum_revenue = cum_revenue_;
    w.cum_cost = cum_cost_;
    w.avg_revenue = static_cast<double>(cum_revenue_) / (window_end - origin_);
    w.rc_defined = cum_cost_ > 0;
    w.rc_ratio = w.rc_defined
                     ? static_cast<double>(cum_revenue_) / static_cast<double>(cum_cost_)
                     : 1.0;
    return w;
}

void MetricsSeries::record_accepted(double t, Resource rev, Resource cst) {
    advance_to(t);
    ++arrivals_;
    ++acceptances_;
    cum_revenue_ += rev;
    cum_cost_ += cst;
}

void MetricsSeries::record_rejected(double t) {
    advance_to(t);
    ++arrivals_;
}

std::vector<MetricsWindow> MetricsSeries::windows() const {
    std::vector<MetricsWindow> out = closed_;
    if (started_)
        out.push_back(snapshot(origin_ + (next_window_ + 1) * window_length_));
    return out;
}

void export_csv(const std::vector<MetricsWindow>& windows,
                const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary);
    if (!out)
        throw std::runtime_error("export_csv: cannot open " + destination.string());
    out << metrics_csv_header() << "\n";
    char line[256];
    for (const MetricsWindow& w : windows) {
        std::snprintf(line, sizeof(line),
                      "%.6f,%lld,%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                      w.window_end_time, static_cast<long long>(w.arrivals),
                      static_cast<long long>(w.acceptances), w.acc_ratio,
                      static_cast<double>(w.cum_revenue),
                      static_cast<double>(w.cum_cost), w.avg_revenue, w.rc_ratio,
                      w.rc_defined ? 1 : 0);
        out << line;
    }
    if (!out)
        throw std::runtime_error("export_csv: write failed for " +
                                 destination.string());
}

} // namespace vnesim
