#pragma once

#include <optional>
#include <vector>

#include "dmclp/graph.hpp"
#include "dmclp/solver.hpp"

namespace dmclp {

struct AttackerResult {
    SolveStatus status = SolveStatus::Optimal;
    long long objective = 0;        // un-covered demand Q
    double best_bound = 0.0;        // upper bound on Q; equals objective when Optimal
    Downgrade gamma;                // optimal downgrade, aligned with instance edges
    std::vector<int> uncovered;     // nodes driven to distance >= R, ascending
    std::vector<double> potentials; // distance to the nearest facility under gamma
                                    // (0 for facility-unreachable nodes)
};

// Per-node cap on the distance to the nearest of any p facilities: the
// (n-p+1)-th smallest fully-downgraded distance from the node. At least one
// facility always sits among the n-p+1 closest nodes, so the cap is valid for
// every placement.
std::vector<double> big_m(const Network& net, int p);

struct AttackerModel {
    Model model;
    std::vector<int> covered;      // C(X), ascending
    std::vector<int> eta;          // node -> var index, -1 if absent
    std::vector<int> gamma;        // edge -> var index
    std::vector<int> pi;           // node -> var index, -1 if absent
    std::vector<char> edge_active; // edge appears in some restricted arc pair
};

// Budget-constrained interdiction MILP for fixed facilities: maximize the
// demand whose downgraded distance reaches R. Potential variables exist for
// covered nodes only and length constraints are restricted to arcs whose both
// endpoints share a facility's coverage set V^m; any path shorter than R
// stays inside such a set, so the restriction is exact. Preprocessing the
// instance first keeps the model small (correct either way).
AttackerModel build_attacker_model_reduced(const Instance& inst, const FacilitySet& x);

struct AttackerModelFull {
    Model model;
    std::vector<int> covered;
    std::vector<int> eta;            // node -> var index, -1 if absent
    std::vector<int> gamma;          // edge -> var index
    std::vector<std::vector<int>> pi; // pi[i][k]
};

// Node-indexed formulation over the full arc set with big-M potential caps.
// Much larger; kept as an independent validation target for the reduced model.
AttackerModelFull build_attacker_model_full(const Instance& inst, const FacilitySet& x);

AttackerResult solve_attacker(const Instance& inst, const FacilitySet& x,
                              std::optional<double> time_limit = {});
AttackerResult solve_attacker_full(const Instance& inst, const FacilitySet& x,
                                   std::optional<double> time_limit = {});

} // namespace dmclp
