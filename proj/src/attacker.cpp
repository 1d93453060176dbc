#include "dmclp/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dmclp/errors.hpp"

namespace dmclp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_facilities(const Instance& inst, const FacilitySet& x) {
    validate_instance(inst);
    FacilitySet sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != x || std::adjacent_find(x.begin(), x.end()) != x.end())
        throw InputError("facility set must be sorted and duplicate-free");
    if (static_cast<int>(x.size()) != inst.p)
        throw InputError("facility set size " + std::to_string(x.size()) +
                         " does not match p = " + std::to_string(inst.p));
    for (int v : x)
        if (v < 0 || v >= inst.network.node_count())
            throw InputError("facility id out of range");
}

std::string node_pair(const Network& net, int e) {
    return std::to_string(net.edges()[e].a) + "_" + std::to_string(net.edges()[e].b);
}

} // namespace

std::vector<double> big_m(const Network& net, int p) {
    const int n = net.node_count();
    if (p < 1 || p > n) throw InputError("big_m: p must be in [1, n]");
    const Downgrade full = full_downgrade(net);
    std::vector<double> m(n);
    for (int k = 0; k < n; ++k) {
        auto dist = shortest_distances(net, full, {k});
        std::sort(dist.begin(), dist.end());
        m[k] = dist[n - p]; // (n - p + 1)-th smallest, self distance 0 included
    }
    return m;
}

AttackerModel build_attacker_model_reduced(const Instance& inst, const FacilitySet& x) {
    check_facilities(inst, x);
    const Network& net = inst.network;
    const int n = net.node_count();
    const Downgrade zeros = zero_downgrade(net);

    AttackerModel am;
    am.covered = coverage(net, zeros, x, inst.R).nodes;
    std::vector<char> is_facility(n, 0);
    for (int v : x) is_facility[v] = 1;

    // V^m membership per facility (gamma = 0 distances, same coverage rule)
    std::vector<std::vector<char>> vm;
    vm.reserve(x.size());
    for (int m : x) {
        std::vector<char> mask(n, 0);
        for (int i : coverage(net, zeros, {m}, inst.R).nodes) mask[i] = 1;
        vm.push_back(std::move(mask));
    }

    Model& mod = am.model;
    mod.sense = ObjSense::Maximize;
    mod.integral_objective = true;

    am.gamma.resize(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e)
        am.gamma[e] = mod.add_var("g_" + node_pair(net, e), VarKind::Continuous, 0.0,
                                  net.edges()[e].ub);
    am.eta.assign(n, -1);
    am.pi.assign(n, -1);
    for (int i : am.covered) {
        // facilities keep their variables, pinned: eta at 0, potential at 0
        am.eta[i] = mod.add_var("eta_" + std::to_string(i), VarKind::Binary, 0.0,
                                is_facility[i] ? 0.0 : 1.0);
        am.pi[i] = mod.add_var("pi_" + std::to_string(i), VarKind::Continuous, 0.0,
                               is_facility[i] ? 0.0 : kInf);
        mod.objective.push_back({am.eta[i], static_cast<double>(net.nodes()[i].weight)});
    }

    std::vector<LinTerm> budget;
    for (int e = 0; e < net.edge_count(); ++e)
        budget.push_back({am.gamma[e], net.edges()[e].cost});
    mod.add_constr("budget", std::move(budget), ConstrSense::LE, inst.B);

    for (int i : am.covered)
        mod.add_constr("cov_" + std::to_string(i), {{am.eta[i], inst.R}, {am.pi[i], -1.0}},
                       ConstrSense::LE, 0.0);

    am.edge_active.assign(net.edge_count(), 0);
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edges()[e];
        for (const auto& mask : vm) {
            if (mask[ed.a] && mask[ed.b]) {
                am.edge_active[e] = 1;
                break;
            }
        }
        if (!am.edge_active[e]) continue;
        mod.add_constr("arc_" + std::to_string(ed.a) + "_" + std::to_string(ed.b),
                       {{am.pi[ed.a], 1.0}, {am.pi[ed.b], -1.0}, {am.gamma[e], -1.0}},
                       ConstrSense::LE, ed.len);
        mod.add_constr("arc_" + std::to_string(ed.b) + "_" + std::to_string(ed.a),
                       {{am.pi[ed.b], 1.0}, {am.pi[ed.a], -1.0}, {am.gamma[e], -1.0}},
                       ConstrSense::LE, ed.len);
    }
    return am;
}

AttackerModelFull build_attacker_model_full(const Instance& inst, const FacilitySet& x) {
    check_facilities(inst, x);
    const Network& net = inst.network;
    const int n = net.node_count();

    AttackerModelFull am;
    am.covered = coverage(net, zero_downgrade(net), x, inst.R).nodes;
    std::vector<char> is_facility(n, 0), is_covered(n, 0);
    for (int v : x) is_facility[v] = 1;
    for (int i : am.covered) is_covered[i] = 1;
    const std::vector<double> caps = big_m(net, inst.p);

    Model& mod = am.model;
    mod.sense = ObjSense::Maximize;
    mod.integral_objective = true;

    am.gamma.resize(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e)
        am.gamma[e] = mod.add_var("g_" + node_pair(net, e), VarKind::Continuous, 0.0,
                                  net.edges()[e].ub);
    am.eta.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const bool can_lose = is_covered[i] && !is_facility[i];
        am.eta[i] = mod.add_var("eta_" + std::to_string(i), VarKind::Binary, 0.0,
                                can_lose ? 1.0 : 0.0);
        mod.objective.push_back({am.eta[i], static_cast<double>(net.nodes()[i].weight)});
    }
    am.pi.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            am.pi[i][k] =
                mod.add_var("pi_" + std::to_string(i) + "_" + std::to_string(k),
                            VarKind::Continuous, 0.0, is_facility[k] ? 0.0 : caps[k]);

    std::vector<LinTerm> budget;
    for (int e = 0; e < net.edge_count(); ++e)
        budget.push_back({am.gamma[e], net.edges()[e].cost});
    mod.add_constr("budget", std::move(budget), ConstrSense::LE, inst.B);

    for (int i = 0; i < n; ++i)
        mod.add_constr("cov_" + std::to_string(i),
                       {{am.eta[i], inst.R}, {am.pi[i][i], -1.0}}, ConstrSense::LE, 0.0);

    for (int i = 0; i < n; ++i) {
        const std::string tag = "arc" + std::to_string(i) + "_";
        for (int e = 0; e < net.edge_count(); ++e) {
            const Edge& ed = net.edges()[e];
            mod.add_constr(tag + std::to_string(ed.a) + "_" + std::to_string(ed.b),
                           {{am.pi[i][ed.a], 1.0}, {am.pi[i][ed.b], -1.0}, {am.gamma[e], -1.0}},
                           ConstrSense::LE, ed.len);
            mod.add_constr(tag + std::to_string(ed.b) + "_" + std::to_string(ed.a),
                           {{am.pi[i][ed.b], 1.0}, {am.pi[i][ed.a], -1.0}, {am.gamma[e], -1.0}},
                           ConstrSense::LE, ed.len);
        }
    }
    return am;
}

namespace {

// Shared post-solve path: clean the downgrade, recompute the certificate
// potentials from actual distances, and verify the objective is integral.
AttackerResult extract(const Instance& inst, const FacilitySet& x, const SolveOutcome& out,
                       const std::vector<int>& gamma_vars,
                       const std::vector<int>& eta_vars,
                       const std::vector<char>* edge_active) {
    const Network& net = inst.network;
    AttackerResult res;
    res.status = out.status;
    res.best_bound = out.best_bound;

    if (!out.has_solution()) {
        // timed out before any incumbent: fall back to the trivial no-op attack
        res.gamma = zero_downgrade(net);
        res.objective = 0;
    } else {
        res.gamma.resize(net.edge_count());
        for (int e = 0; e < net.edge_count(); ++e) {
            double g = out.values[gamma_vars[e]];
            if (edge_active && !(*edge_active)[e]) g = 0.0; // off every restricted arc
            g = std::clamp(g, 0.0, net.edges()[e].ub);
            if (g < 1e-9) g = 0.0;
            res.gamma[e] = g;
        }
        long long q = 0;
        for (int i = 0; i < net.node_count(); ++i) {
            if (eta_vars[i] >= 0 && out.values[eta_vars[i]] > 0.5) {
                res.uncovered.push_back(i);
                q += net.nodes()[i].weight;
            }
        }
        res.objective = q;
        if (std::abs(out.objective - static_cast<double>(q)) > 1e-4)
            throw SolverError("attacker: non-integral objective " +
                              std::to_string(out.objective));
    }
    if (res.status == SolveStatus::Optimal) res.best_bound = static_cast<double>(res.objective);

    auto dist = shortest_distances(net, res.gamma, x);
    res.potentials.resize(net.node_count());
    for (int k = 0; k < net.node_count(); ++k)
        res.potentials[k] = std::isfinite(dist[k]) ? dist[k] : 0.0;
    return res;
}

} // namespace

AttackerResult solve_attacker(const Instance& inst, const FacilitySet& x,
                              std::optional<double> time_limit) {
    AttackerModel am = build_attacker_model_reduced(inst, x);
    SolveParams params;
    params.time_limit = time_limit;
    SolveOutcome out = solve(am.model, params);
    if (out.status == SolveStatus::Infeasible || out.status == SolveStatus::Unbounded)
        throw SolverError("attacker model came back " + std::string(to_string(out.status)));
    return extract(inst, x, out, am.gamma, am.eta, &am.edge_active);
}

AttackerResult solve_attacker_full(const Instance& inst, const FacilitySet& x,
                                   std::optional<double> time_limit) {
    AttackerModelFull am = build_attacker_model_full(inst, x);
    SolveParams params;
    params.time_limit = time_limit;
    SolveOutcome out = solve(am.model, params);
    if (out.status == SolveStatus::Infeasible || out.status == SolveStatus::Unbounded)
        throw SolverError("attacker model came back " + std::string(to_string(out.status)));
    return extract(inst, x, out, am.gamma, am.eta, nullptr);
}

} // namespace dmclp
