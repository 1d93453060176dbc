#include "dmclp/preprocess.hpp"

namespace dmclp {

namespace {
constexpr double kTol = 1e-9;
}

Instance preprocess(const Instance& inst, PreprocessReport* report) {
    const Network& net = inst.network;
    PreprocessReport rep;

    std::vector<Edge> kept;
    kept.reserve(net.edge_count());
    for (const Edge& e : net.edges()) {
        if (e.len >= inst.R - kTol) {
            ++rep.edges_removed;
            continue;
        }
        Edge f = e;
        if (e.len + e.ub >= inst.R - kTol && e.ub > inst.R - e.len) {
            f.ub = inst.R - e.len;
            ++rep.bounds_tightened;
        }
        kept.push_back(f);
    }

    Instance out;
    out.network = Network(net.nodes(), kept);
    out.p = inst.p;
    out.R = inst.R;
    out.B = inst.B;
    if (report) *report = rep;
    return out;
}

} // namespace dmclp
