#ifndef VNESIM_SIMULATE_HPP
#define VNESIM_SIMULATE_HPP

#include "vnesim/embedding.hpp"
#include "vnesim/metrics.hpp"
#include "vnesim/network.hpp"
#include "vnesim/scenario.hpp"

namespace vnesim {

// Replays an event stream against a private copy of the substrate: arrivals
// are embedded through the mapper, departures release their resources, and
// every arrival is recorded in the returned series.
MetricsSeries evaluate_stream(const SubstrateNetwork& substrate,
                              const EventStream& stream, NodeMapper& mapper,
                              double window_length = 100.0);

} // namespace vnesim

#endif
