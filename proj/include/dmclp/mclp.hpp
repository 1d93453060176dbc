#pragma once

#include "dmclp/graph.hpp"

namespace dmclp {

struct MclpResult {
    FacilitySet facilities;
    long long covered_demand = 0;
};

// Maximal covering location on the downgraded network N(gamma): place p
// facilities maximizing the demand within distance < R. Branch and bound on
// the placement binaries; coverage indicators stay continuous (they come out
// integral on their own once the placement is fixed).
MclpResult solve_mclp(const Network& net, const Downgrade& gamma, int p, double R);

// Exhaustive enumeration oracle; refuses when C(n, p) > 1e6.
MclpResult solve_mclp_enum(const Network& net, const Downgrade& gamma, int p, double R);

} // namespace dmclp
