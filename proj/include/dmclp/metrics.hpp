#pragma once

#include "dmclp/graph.hpp"
#include "dmclp/heuristic.hpp"

namespace dmclp {

struct BoundsResult {
    long long lb = 0; // location value when every edge is fully downgraded
    long long ub = 0; // location value on the nominal network
    FacilitySet x_lb;
    FacilitySet x_ub;
};

// LB comes from locating on the fully downgraded network (attack assumed
// maximal), UB from ignoring the attacker; the true optimum sits between.
BoundsResult bounds(const Instance& inst);

// Percentage gap of a heuristic value bs_h to the exact value bs_t,
// (bs_t - bs_h) / bs_t * 100; negative means the heuristic did better.
double gap_bs(long long bs_t, long long bs_h);

struct Insight {
    double mi_o = 0.0;   // optimistic planner (UB set) vs bs_h, percent
    double mi_p = 0.0;   // pessimistic planner (LB set) vs bs_h, percent
    long long s_xub = 0; // post-attack covered demand of the UB set
    long long s_xlb = 0; // post-attack covered demand of the LB set
};

// What a planner loses by ignoring the attacker (locate on N, then get
// attacked) or by overfearing it (locate on N(u)), relative to bs_h.
Insight managerial_insight(const Instance& inst, long long bs_h, AttackerCache* cache = nullptr);

} // namespace dmclp
