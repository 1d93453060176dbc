#pragma once

#include <vector>

#include "dmclp/solver.hpp"

namespace dmclp::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x; // structural values when Optimal
    double obj = 0.0;      // in minimization form (maximize models are negated)
};

// Continuous relaxation of the model with variable bounds replaced by lo/hi.
// Always minimizes internally: for ObjSense::Maximize the returned obj is the
// negated model objective. Deterministic.
LpResult solve_relaxation(const Model& model, const std::vector<double>& lo,
                          const std::vector<double>& hi);

} // namespace dmclp::lp
