#include "dmclp/mclp.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dmclp/errors.hpp"
#include "dmclp/solver.hpp"
#include "dmclp/util.hpp"

namespace dmclp {

namespace {

void check_args(const Network& net, const Downgrade& gamma, int p, double R) {
    check_downgrade(net, gamma);
    if (p < 1 || p > net.node_count()) throw InputError("mclp: p must be in [1, n]");
    if (!(R > 0)) throw InputError("mclp: R must be positive");
}

// covers[j] = nodes within radius of a facility at j
std::vector<std::vector<int>> cover_lists(const Network& net, const Downgrade& gamma, double R) {
    std::vector<std::vector<int>> covers(net.node_count());
    for (int j = 0; j < net.node_count(); ++j) {
        auto dist = shortest_distances(net, gamma, {j});
        for (int i = 0; i < net.node_count(); ++i)
            if (dist[i] < R - kCoverEps) covers[j].push_back(i);
    }
    return covers;
}

} // namespace

MclpResult solve_mclp(const Network& net, const Downgrade& gamma, int p, double R) {
    check_args(net, gamma, p, R);
    const int n = net.node_count();
    const auto covers = cover_lists(net, gamma, R);
    std::vector<std::vector<int>> covered_by(n);
    for (int j = 0; j < n; ++j)
        for (int i : covers[j]) covered_by[i].push_back(j);

    Model mod;
    mod.sense = ObjSense::Maximize;
    mod.integral_objective = true;
    std::vector<int> xv(n), rv(n);
    for (int j = 0; j < n; ++j)
        xv[j] = mod.add_var("x_" + std::to_string(j), VarKind::Binary, 0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        rv[i] = mod.add_var("rho_" + std::to_string(i), VarKind::Continuous, 0.0,
                            covered_by[i].empty() ? 0.0 : 1.0);
        if (net.nodes()[i].weight > 0)
            mod.objective.push_back({rv[i], static_cast<double>(net.nodes()[i].weight)});
    }
    for (int i = 0; i < n; ++i) {
        if (covered_by[i].empty()) continue;
        std::vector<LinTerm> terms{{rv[i], 1.0}};
        for (int j : covered_by[i]) terms.push_back({xv[j], -1.0});
        mod.add_constr("cov_" + std::to_string(i), std::move(terms), ConstrSense::LE, 0.0);
    }
    std::vector<LinTerm> card;
    for (int j = 0; j < n; ++j) card.push_back({xv[j], 1.0});
    mod.add_constr("card", std::move(card), ConstrSense::EQ, static_cast<double>(p));

    SolveOutcome out = solve(mod);
    if (out.status != SolveStatus::Optimal)
        throw SolverError("mclp solve came back " + std::string(to_string(out.status)));

    MclpResult res;
    for (int j = 0; j < n; ++j)
        if (out.values[xv[j]] > 0.5) res.facilities.push_back(j);
    res.covered_demand = std::llround(out.objective);
    if (std::abs(out.objective - static_cast<double>(res.covered_demand)) > 1e-4)
        throw SolverError("mclp: non-integral objective " + std::to_string(out.objective));
    return res;
}

MclpResult solve_mclp_enum(const Network& net, const Downgrade& gamma, int p, double R) {
    check_args(net, gamma, p, R);
    const int n = net.node_count();
    if (binom_capped(n, p, 1000000) > 1000000)
        throw GuardError("mclp enumeration refused: C(" + std::to_string(n) + ", " +
                         std::to_string(p) + ") exceeds 1e6");
    const auto covers = cover_lists(net, gamma, R);

    std::vector<int> comb(p);
    std::iota(comb.begin(), comb.end(), 0);
    MclpResult best;
    best.covered_demand = -1;
    std::vector<int> mark(n, -1);
    int stamp = 0;
    do {
        long long demand = 0;
        ++stamp;
        for (int j : comb)
            for (int i : covers[j])
                if (mark[i] != stamp) {
                    mark[i] = stamp;
                    demand += net.nodes()[i].weight;
                }
        if (demand > best.covered_demand) {
            best.covered_demand = demand;
            best.facilities = comb;
        }
    } while (next_combination(comb, n));
    return best;
}

} // namespace dmclp
