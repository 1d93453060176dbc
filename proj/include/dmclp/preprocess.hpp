#pragma once

#include "dmclp/graph.hpp"

namespace dmclp {

struct PreprocessReport {
    int edges_removed = 0;
    int bounds_tightened = 0;
};

// Value-preserving reduction: an edge of length >= R cannot lie on any
// covering path (those are strictly shorter than R), so it is dropped; and
// downgrading an edge beyond R - len buys the attacker nothing, so caps are
// clipped to R - len. Idempotent; p, R, B and the node set are untouched.
Instance preprocess(const Instance& inst, PreprocessReport* report = nullptr);

} // namespace dmclp
