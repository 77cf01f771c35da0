#include "vnesim/simulate.hpp"

namespace vnesim {

MetricsSeries evaluate_stream(const SubstrateNetwork& substrate,
                              const EventStream& stream, NodeMapper& mapper,
                              double window_length) {
    SubstrateNetwork net = substrate;
    EmbeddingEngine engine(net);
    MetricsSeries series(window_length);
    for (const SimEvent& ev : stream.events) {
        if (ev.kind == SimEvent::Kind::departure) {
            // Rejected requests have no resources to give back.
            if (engine.is_active(ev.request_id))
                engine.release_request(ev.request_id);
            continue;
        }
        const VirtualRequest& vnr = stream.request(ev.request_id);
        const EmbedResult result = engine.embed_request(vnr, mapper);
        if (result.accepted())
            series.record_accepted(ev.time, result.embedding->revenue,
                                   result.embedding->cost);
        else
            series.record_rejected(ev.time);
    }
    return series;
}

} // namespace vnesim
