#pragma once

#include <optional>
#include <vector>

#include "dmclp/attacker.hpp"
#include "dmclp/heuristic.hpp"

namespace dmclp {

enum class AttackerMode { Milp, Oracle };

struct ExactEntry {
    FacilitySet facilities;
    double value = 0.0;
};

struct ExactResult {
    Solution best;
    // One row per enumerated facility set, in lexicographic order.
    // Only filled when asked for; the table is n-choose-p rows.
    std::vector<ExactEntry> table;
};

// Exact solution by facility-set enumeration: every p-subset is attacked to
// optimality and scored by the demand it keeps covered. Refuses instances
// with more than 1e5 candidate sets.
ExactResult solve_exact_enum(const Instance& inst, AttackerMode mode = AttackerMode::Milp,
                             bool want_table = false);

// Independent attacker for cross-checking the MILP: enumerates candidate
// uncovered sets S in decreasing total weight and takes the first one whose
// cheapest downgrade forcing all of S out of coverage fits the budget. The
// pricing LP is a plain min-cost model over all arcs, sharing nothing with
// the MILP construction. Guard: at most 16 covered nodes.
AttackerResult attacker_oracle_subsets(const Instance& inst, const FacilitySet& x);

// Closed-form attacker for star networks with the facility at the centre:
// node i falls out of coverage iff its spoke absorbs R - len_i of downgrade,
// so the attack reduces to a 0/1 knapsack over the leaves. Costs must be
// exactly representable in cents.
AttackerResult attacker_oracle_star(const Instance& inst, const FacilitySet& x);

// Embeds a 0/1 knapsack (weights g, values b, capacity K) into a star
// instance whose optimal attack value equals the knapsack optimum: spoke i
// costs exactly g_i to push out of coverage and is worth demand b_i. The
// centre weight W must exceed sum b so the centre is the unique location
// choice.
Instance star_from_knapsack(const std::vector<int>& g, const std::vector<int>& b, int K, int W);

} // namespace dmclp
