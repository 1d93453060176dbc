#include "dmclp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "dmclp/errors.hpp"
#include "simplex.hpp"

namespace dmclp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError("model: " + msg);
}

} // namespace

int Model::add_var(std::string name, VarKind kind, double lo, double hi) {
    vars.push_back({std::move(name), kind, lo, hi});
    return static_cast<int>(vars.size()) - 1;
}

int Model::add_constr(std::string name, std::vector<LinTerm> terms, ConstrSense sense,
                      double rhs) {
    cons.push_back({std::move(name), std::move(terms), sense, rhs});
    return static_cast<int>(cons.size()) - 1;
}

void Model::validate() const {
    const int n = static_cast<int>(vars.size());
    for (int j = 0; j < n; ++j) {
        const Variable& v = vars[j];
        require(!(v.lo > v.hi), "variable " + v.name + " has lo > hi");
        require(!std::isnan(v.lo) && !std::isnan(v.hi), "variable " + v.name + " has NaN bound");
        if (v.kind == VarKind::Binary)
            require(std::max(v.lo, 0.0) <= std::min(v.hi, 1.0) + 1e-12,
                    "binary " + v.name + " has empty domain");
    }
    for (const auto& c : cons) {
        require(std::isfinite(c.rhs), "constraint " + c.name + " has non-finite rhs");
        for (const auto& t : c.terms) {
            require(t.var >= 0 && t.var < n, "constraint " + c.name + " references bad variable");
            require(std::isfinite(t.coef), "constraint " + c.name + " has non-finite coefficient");
        }
    }
    for (const auto& t : objective) {
        require(t.var >= 0 && t.var < n, "objective references bad variable");
        require(std::isfinite(t.coef), "objective has non-finite coefficient");
    }
}

namespace {

struct BnbNode {
    std::vector<double> lo, hi;
    double parent_bound; // LP bound inherited from the parent, -inf at the root
};

thread_local double t_solver_seconds = 0.0;

} // namespace

double solver_seconds() { return t_solver_seconds; }
void reset_solver_seconds() { t_solver_seconds = 0.0; }

SolveOutcome solve(const Model& model, const SolveParams& params) {
    model.validate();
    const auto t_start = std::chrono::steady_clock::now();
    struct SecondsGuard {
        std::chrono::steady_clock::time_point t0;
        ~SecondsGuard() {
            t_solver_seconds += std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
        }
    } seconds_guard{t_start};
    auto out_of_time = [&] {
        if (!params.time_limit) return false;
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - t_start;
        return el.count() >= *params.time_limit;
    };

    const int n = static_cast<int>(model.vars.size());
    std::vector<double> lo(n), hi(n);
    std::vector<int> binaries;
    for (int j = 0; j < n; ++j) {
        lo[j] = model.vars[j].lo;
        hi[j] = model.vars[j].hi;
        if (model.vars[j].kind == VarKind::Binary) {
            lo[j] = std::max(lo[j], 0.0);
            hi[j] = std::min(hi[j], 1.0);
            binaries.push_back(j);
        }
    }

    // Internal objective is minimization; convert on the way out.
    const bool maximize = model.sense == ObjSense::Maximize;
    auto to_model_obj = [&](double v) { return maximize ? -v : v; };

    double inc_obj = kInf;
    std::vector<double> inc_x;
    auto prune_threshold = [&] {
        if (inc_obj == kInf) return kInf;
        if (model.integral_objective && std::abs(inc_obj - std::round(inc_obj)) <= 1e-4)
            return std::round(inc_obj) - 1.0 + 1e-6;
        return inc_obj - params.gap_tol;
    };

    std::vector<BnbNode> stack;
    stack.push_back({lo, hi, -kInf});
    long long nodes = 0;
    bool timed_out = false, unbounded = false;

    while (!stack.empty()) {
        if (out_of_time()) {
            timed_out = true;
            break;
        }
        BnbNode node = std::move(stack.back());
        stack.pop_back();
        if (node.parent_bound >= prune_threshold()) continue;
        ++nodes;

        lp::LpResult rel = lp::solve_relaxation(model, node.lo, node.hi);
        if (rel.status == lp::LpStatus::Infeasible) continue;
        if (rel.status == lp::LpStatus::Unbounded) {
            unbounded = true;
            break;
        }
        if (rel.obj >= prune_threshold()) continue;

        // most fractional binary, ties to the smaller index
        int branch_var = -1;
        double worst = kIntTol;
        for (int j : binaries) {
            const double f = rel.x[j] - std::floor(rel.x[j]);
            const double d = std::min(f, 1.0 - f);
            if (d > worst + 1e-12) {
                worst = d;
                branch_var = j;
            }
        }
        if (branch_var < 0) {
            if (rel.obj < inc_obj) {
                inc_obj = rel.obj;
                inc_x = rel.x;
                for (int j : binaries) inc_x[j] = std::round(inc_x[j]);
            }
            continue;
        }

        BnbNode down{node.lo, node.hi, rel.obj};
        down.hi[branch_var] = 0.0;
        BnbNode up{std::move(node.lo), std::move(node.hi), rel.obj};
        up.lo[branch_var] = 1.0;
        stack.push_back(std::move(down));
        stack.push_back(std::move(up)); // explore the 1-branch first
    }

    SolveOutcome out;
    out.nodes = nodes;
    if (unbounded) {
        out.status = SolveStatus::Unbounded;
        return out;
    }
    if (timed_out) {
        out.status = SolveStatus::TimeLimit;
        double open_bound = inc_obj;
        for (const auto& nd : stack) open_bound = std::min(open_bound, nd.parent_bound);
        out.best_bound = to_model_obj(open_bound);
        if (inc_obj < kInf) {
            out.values = inc_x;
            out.objective = to_model_obj(inc_obj);
        }
        return out;
    }
    if (inc_obj < kInf) {
        out.status = SolveStatus::Optimal;
        out.values = inc_x;
        out.objective = to_model_obj(inc_obj);
        out.best_bound = out.objective;
        return out;
    }
    out.status = SolveStatus::Infeasible;
    return out;
}

namespace {

std::string var_name(const Model& model, int j) {
    if (!model.vars[j].name.empty()) return model.vars[j].name;
    return "x" + std::to_string(j);
}

void write_terms(const Model& model, const std::vector<LinTerm>& terms, std::ostream& out) {
    bool first = true;
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        if (first) {
            if (t.coef < 0) out << "- ";
            first = false;
        } else {
            out << (t.coef < 0 ? " - " : " + ");
        }
        const double a = std::abs(t.coef);
        if (a != 1.0) out << a << ' ';
        out << var_name(model, t.var);
    }
    if (first) out << "0 " << var_name(model, 0);
}

} // namespace

void write_lp(const Model& model, std::ostream& out) {
    out << (model.sense == ObjSense::Maximize ? "Maximize" : "Minimize") << "\n obj: ";
    write_terms(model, model.objective, out);
    out << "\nSubject To\n";
    for (size_t i = 0; i < model.cons.size(); ++i) {
        const Constraint& c = model.cons[i];
        out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
        write_terms(model, c.terms, out);
        switch (c.sense) {
            case ConstrSense::LE: out << " <= "; break;
            case ConstrSense::GE: out << " >= "; break;
            case ConstrSense::EQ: out << " = "; break;
        }
        out << c.rhs << '\n';
    }
    out << "Bounds\n";
    for (size_t j = 0; j < model.vars.size(); ++j) {
        const Variable& v = model.vars[j];
        if (v.kind == VarKind::Binary) continue;
        if (v.lo == -kInf && v.hi == kInf) {
            out << ' ' << var_name(model, static_cast<int>(j)) << " free\n";
        } else {
            out << ' ';
            if (v.lo == -kInf)
                out << "-inf";
            else
                out << v.lo;
            out << " <= " << var_name(model, static_cast<int>(j)) << " <= ";
            if (v.hi == kInf)
                out << "+inf";
            else
                out << v.hi;
            out << '\n';
        }
    }
    bool any_bin = false;
    for (const auto& v : model.vars) any_bin |= v.kind == VarKind::Binary;
    if (any_bin) {
        out << "Binaries\n";
        for (size_t j = 0; j < model.vars.size(); ++j)
            if (model.vars[j].kind == VarKind::Binary)
                out << ' ' << var_name(model, static_cast<int>(j)) << '\n';
    }
    out << "End\n";
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        default: return "TimeLimit";
    }
}

} // namespace dmclp
