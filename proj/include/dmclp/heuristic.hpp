#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmclp/attacker.hpp"
#include "dmclp/graph.hpp"

namespace dmclp {

enum class LsVariant {
    None,
    FixedOutInA,    // swap scored by coverage under the incumbent downgrade
    FixedOutInB,    // entering node scored under fully downgraded lengths
    FixedOutOptInA, // leaving node by exclusive loss under incumbent downgrade
    FixedOutOptInB, // leaving node by exclusive loss under full downgrade
    OptimalOutIn,   // every swap priced by its own attack
};

LsVariant parse_ls_variant(const std::string& s);
std::string to_string(LsVariant v);

struct SolutionTrace {
    int strategy = -1;      // starting-downgrade code that produced the incumbent
    int alt_iterations = 0; // alternating rounds run for that strategy
    int ls_moves = 0;       // accepted local-search swaps
};

struct Solution {
    FacilitySet facilities;
    Downgrade gamma;    // worst-case attack found for these facilities
    double value = 0.0; // demand still covered after that attack
    SolutionTrace trace;
};

// Exact attacks are the expensive part of the search and the same facility
// set comes up repeatedly, so results are memoised per set. Time-limited
// solves are kept apart: their values overestimate and never count as final.
struct AttackerCache {
    std::map<FacilitySet, AttackerResult> exact;
    std::map<FacilitySet, AttackerResult> limited;
};

struct HeuristicConfig {
    std::vector<int> strategies = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    int max_alt_iters = 30;
    LsVariant ls = LsVariant::OptimalOutIn;
    // <= 0 picks the variant default: 50 for the fixed-out families,
    // 10 for OptimalOutIn.
    int ls_max_iters = -1;
    // Cap, in seconds, on the attacks priced inside the local-search
    // candidate loops; unset means every attack runs to optimality.
    std::optional<double> attacker_time_limit;
};

// Starting downgrades, by code:
//   0 gamma = 0                      5 gamma = 0, radius scaled by 0.8
//   1 gamma = u                      6 gamma = 0, radius scaled by 0.7
//   2 gamma_e = min(B/m, u_e)        7 gamma = 0, radius scaled by 0.6
//   3 gamma_e = min(u_e B / sum u, u_e)
//   4 spend B on the cheapest cost rates first   8 gamma = u/2
Downgrade starting_downgrade(const Instance& inst, int code);

// Facility set a strategy starts from: the location model solved on the
// network downgraded by starting_downgrade(code), with the scaled radius
// for codes 5..7.
FacilitySet starting_set(const Instance& inst, int code);

// Alternate attack and relocation: attack the current set, relocate against
// that attack, and repeat until a facility set comes back or max_iters
// rounds have run. Returns the best iterate by post-attack covered demand,
// with its gamma an exact attacker response.
Solution alternating_search(const Instance& inst, const FacilitySet& x0, int max_iters,
                            AttackerCache& cache);

// Local-search families. Each refines sol in place and returns the number
// of accepted swaps; the first non-improving round stops the search.
int ls_fixed_out_in(const Instance& inst, Solution& sol, bool version_b, int max_iters,
                    AttackerCache& cache);
int ls_fixed_out_opt_in(const Instance& inst, Solution& sol, bool version_b, int max_iters,
                        std::optional<double> attacker_time_limit, AttackerCache& cache);
int ls_optimal_out_in(const Instance& inst, Solution& sol, int max_iters,
                      std::optional<double> attacker_time_limit, AttackerCache& cache);

// Full matheuristic: best alternating-search incumbent over cfg.strategies
// (ties to the lower code), refined by the configured local search, then
// re-verified by one fresh exact attack that supplies the reported gamma.
Solution run_matheuristic(const Instance& inst, const HeuristicConfig& cfg = {},
                          AttackerCache* cache = nullptr);

} // namespace dmclp
