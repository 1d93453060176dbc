#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dmclp {

enum class VarKind { Continuous, Binary };
enum class ConstrSense { LE, GE, EQ };
enum class ObjSense { Minimize, Maximize };

struct LinTerm {
    int var = -1;
    double coef = 0.0;
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct Constraint {
    std::string name;
    std::vector<LinTerm> terms;
    ConstrSense sense = ConstrSense::LE;
    double rhs = 0.0;
};

// Mixed binary/continuous linear program. Binary variables may carry extra
// bounds (fixing a variable to 0 or 1 is just lo = hi).
struct Model {
    ObjSense sense = ObjSense::Maximize;
    std::vector<Variable> vars;
    std::vector<Constraint> cons;
    std::vector<LinTerm> objective;
    // Every solution with integral binaries has an integral objective value
    // (e.g. integer weights times binary indicators). Lets the search prove
    // optimality without closing the last fractional gap.
    bool integral_objective = false;

    int add_var(std::string name, VarKind kind, double lo, double hi);
    int add_constr(std::string name, std::vector<LinTerm> terms, ConstrSense sense, double rhs);
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, TimeLimit };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> values; // empty when no feasible point was found
    double objective = std::numeric_limits<double>::quiet_NaN();
    double best_bound = std::numeric_limits<double>::quiet_NaN();
    long long nodes = 0;
    bool has_solution() const { return !values.empty(); }
};

struct SolveParams {
    std::optional<double> time_limit; // seconds, wall clock
    double gap_tol = 1e-6;
};

// Deterministic single-threaded branch and bound over the binary variables,
// bounded-variable primal simplex underneath. Re-solving the same model gives
// the identical outcome.
SolveOutcome solve(const Model& model, const SolveParams& params = {});

// Wall time this thread has spent inside solve() since the last reset; the
// benchmark separates it from total method time.
double solver_seconds();
void reset_solver_seconds();

// CPLEX-LP style text dump, for eyeballing models.
void write_lp(const Model& model, std::ostream& out);

const char* to_string(SolveStatus status);

} // namespace dmclp
