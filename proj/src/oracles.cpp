#include "dmclp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <sstream>

#include "dmclp/errors.hpp"
#include "dmclp/solver.hpp"
#include "dmclp/util.hpp"

namespace dmclp {

namespace {

void check_facility_set(const Instance& inst, const FacilitySet& x) {
    const int n = inst.network.node_count();
    if (static_cast<int>(x.size()) != inst.p)
        throw InputError("facility set size does not match p");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] >= n) throw InputError("facility id out of range");
        if (i > 0 && x[i] <= x[i - 1]) throw InputError("facility set must be strictly ascending");
    }
}

long long round_integral(double v, const char* what) {
    const long long r = std::llround(v);
    if (std::abs(v - static_cast<double>(r)) > 1e-4) {
        std::ostringstream os;
        os << what << " came out non-integral: " << v;
        throw SolverError(os.str());
    }
    return r;
}

std::vector<double> canonical_potentials(const Network& net, const Downgrade& gamma,
                                         const FacilitySet& x) {
    std::vector<double> pot = shortest_distances(net, gamma, x);
    for (double& v : pot)
        if (!std::isfinite(v)) v = 0.0;
    return pot;
}

// Minimum downgrade spend that pushes every node of s to distance >= R,
// as a plain LP over all arcs: gamma within caps, potentials pinned to 0 on
// facilities and to at least R on s, triangle constraints everywhere. The
// true downgraded distances are themselves feasible potentials, so the LP is
// feasible exactly when some affordable-at-any-price downgrade works, and its
// optimum is the exact cheapest spend.
struct UncoverPricer {
    Model model;
    std::vector<int> gamma_var;
    std::vector<int> pi_var;

    UncoverPricer(const Network& net, const FacilitySet& x) {
        const int n = net.node_count();
        const int m = net.edge_count();
        model.sense = ObjSense::Minimize;
        gamma_var.resize(m);
        pi_var.resize(n);
        for (int e = 0; e < m; ++e)
            gamma_var[e] = model.add_var("g" + std::to_string(e), VarKind::Continuous, 0.0,
                                         net.edges()[e].ub);
        std::vector<char> is_fac(n, 0);
        for (int f : x) is_fac[f] = 1;
        const double inf = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k)
            pi_var[k] = model.add_var("p" + std::to_string(k), VarKind::Continuous, 0.0,
                                      is_fac[k] ? 0.0 : inf);
        for (int e = 0; e < m; ++e) {
            const Edge& ed = net.edges()[e];
            model.add_constr("", {{pi_var[ed.a], 1.0}, {pi_var[ed.b], -1.0}, {gamma_var[e], -1.0}},
                             ConstrSense::LE, ed.len);
            model.add_constr("", {{pi_var[ed.b], 1.0}, {pi_var[ed.a], -1.0}, {gamma_var[e], -1.0}},
                             ConstrSense::LE, ed.len);
            model.objective.push_back({gamma_var[e], ed.cost});
        }
    }

    // Returns the minimum cost, or nullopt when s cannot be uncovered at all.
    std::optional<double> price(const Network& net, const std::vector<int>& s, double R,
                                Downgrade* gamma_out) {
        for (int k = 0; k < net.node_count(); ++k)
            if (model.vars[pi_var[k]].hi > 0.0) model.vars[pi_var[k]].lo = 0.0;
        for (int i : s) model.vars[pi_var[i]].lo = R;
        const SolveOutcome out = solve(model);
        if (out.status == SolveStatus::Infeasible) return std::nullopt;
        if (out.status != SolveStatus::Optimal) throw SolverError("uncover pricing LP failed");
        if (gamma_out) {
            gamma_out->assign(net.edge_count(), 0.0);
            for (int e = 0; e < net.edge_count(); ++e) {
                double g = out.values[gamma_var[e]];
                g = std::min(std::max(g, 0.0), net.edges()[e].ub);
                (*gamma_out)[e] = g < 1e-9 ? 0.0 : g;
            }
        }
        return out.objective;
    }
};

} // namespace

AttackerResult attacker_oracle_subsets(const Instance& inst, const FacilitySet& x) {
    check_facility_set(inst, x);
    const Network& net = inst.network;

    AttackerResult res;
    res.status = SolveStatus::Optimal;
    res.gamma = zero_downgrade(net);
    res.potentials = canonical_potentials(net, res.gamma, x);

    const Coverage cov = coverage(net, res.gamma, x, inst.R);
    if (static_cast<int>(cov.nodes.size()) > 16)
        throw GuardError("subset attacker oracle handles at most 16 covered nodes");

    std::vector<char> is_fac(net.node_count(), 0);
    for (int f : x) is_fac[f] = 1;
    std::vector<int> pool;
    for (int i : cov.nodes)
        if (!is_fac[i]) pool.push_back(i);
    if (pool.empty()) return res;

    UncoverPricer pricer(net, x);
    const double budget = inst.B + 1e-7;

    // Any set containing a node too expensive on its own is too expensive
    // outright (uncovering more nodes never gets cheaper), so such nodes
    // leave the pool before the subset enumeration.
    {
        std::vector<int> kept;
        for (int i : pool) {
            const auto c = pricer.price(net, {i}, inst.R, nullptr);
            if (c && *c <= budget) kept.push_back(i);
        }
        pool.swap(kept);
    }
    const int k = static_cast<int>(pool.size());
    if (k == 0) return res;

    std::vector<double> wt(k);
    double pool_weight = 0.0;
    for (int idx = 0; idx < k; ++idx) {
        wt[idx] = net.nodes()[pool[idx]].weight;
        pool_weight += wt[idx];
    }

    // Enumerate candidate uncovered sets S in decreasing total weight by
    // walking their complements T in increasing weight: a priority queue over
    // (sum, mask) yields each subset of the pool exactly once, cheapest sum
    // first, via the usual add-next / swap-for-next successor pair on
    // weight-sorted indices.
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return wt[a] < wt[b]; });

    struct State {
        double sum;
        std::uint32_t mask; // over sorted positions
        int last;           // highest sorted position included
        bool operator>(const State& o) const {
            return sum != o.sum ? sum > o.sum : mask > o.mask;
        }
    };
    std::priority_queue<State, std::vector<State>, std::greater<State>> heap;

    auto try_complement = [&](std::uint32_t t_mask) -> bool {
        std::vector<int> s;
        double q = 0.0;
        for (int pos = 0; pos < k; ++pos)
            if (!(t_mask >> pos & 1)) {
                s.push_back(pool[order[pos]]);
                q += wt[order[pos]];
            }
        if (s.empty()) return false;
        std::sort(s.begin(), s.end());
        Downgrade gamma;
        const auto c = pricer.price(net, s, inst.R, &gamma);
        if (!c || *c > budget) return false;
        res.objective = round_integral(q, "attacker oracle objective");
        res.best_bound = static_cast<double>(res.objective);
        res.gamma = std::move(gamma);
        res.uncovered = std::move(s);
        res.potentials = canonical_potentials(net, res.gamma, x);
        return true;
    };

    if (try_complement(0)) return res;
    heap.push({wt[order[0]], 1u, 0});
    while (!heap.empty()) {
        const State st = heap.top();
        heap.pop();
        if (try_complement(st.mask)) return res;
        if (st.last + 1 < k) {
            heap.push({st.sum + wt[order[st.last + 1]], st.mask | (1u << (st.last + 1)),
                       st.last + 1});
            heap.push({st.sum - wt[order[st.last]] + wt[order[st.last + 1]],
                       (st.mask ^ (1u << st.last)) | (1u << (st.last + 1)), st.last + 1});
        }
    }
    return res; // nothing affordable: Q = 0, gamma = 0
}

AttackerResult attacker_oracle_star(const Instance& inst, const FacilitySet& x) {
    check_facility_set(inst, x);
    const Network& net = inst.network;
    const int n = net.node_count();
    if (net.edge_count() != n - 1) throw InputError("star oracle expects a star network");
    if (x.size() != 1) throw InputError("star oracle expects the single facility at the centre");
    const int centre = x[0];
    std::vector<int> spoke(n, -1);
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edges()[e];
        const int leaf = ed.a == centre ? ed.b : ed.b == centre ? ed.a : -1;
        if (leaf < 0 || spoke[leaf] >= 0)
            throw InputError("star oracle expects every edge incident to the facility");
        spoke[leaf] = e;
    }

    struct Item {
        int leaf;
        int edge;
        long long cost; // scaled to hundredths
        double value;
        double need; // downgrade that exactly reaches R
    };
    std::vector<Item> items;
    for (int v = 0; v < n; ++v) {
        if (v == centre) continue;
        const Edge& ed = net.edges()[spoke[v]];
        if (ed.len >= inst.R - kCoverEps) continue; // out of coverage already
        const double need = inst.R - ed.len;
        if (ed.ub < need - 1e-9) continue; // cap too small, leaf is safe
        const double scaled = ed.cost * need * 100.0;
        const long long cents = std::llround(scaled);
        if (std::abs(scaled - static_cast<double>(cents)) > 1e-6 * std::max(1.0, std::abs(scaled)))
            throw InputError("star oracle needs costs representable at 2 decimals");
        items.push_back({v, spoke[v], cents, static_cast<double>(net.nodes()[v].weight), need});
    }

    AttackerResult res;
    res.status = SolveStatus::Optimal;
    res.gamma = zero_downgrade(net);

    const long long cap = static_cast<long long>(std::floor(inst.B * 100.0 + 1e-6));
    if (cap > 10'000'000) throw GuardError("star oracle budget exceeds 1e7 scaled units");

    if (!items.empty() && cap >= 0) {
        const std::size_t words = static_cast<std::size_t>(cap / 64 + 1);
        std::vector<double> dp(static_cast<std::size_t>(cap) + 1, 0.0);
        std::vector<std::vector<std::uint64_t>> take(items.size(),
                                                     std::vector<std::uint64_t>(words, 0));
        for (std::size_t it = 0; it < items.size(); ++it) {
            const long long c = items[it].cost;
            for (long long w = cap; w >= c; --w) {
                const double cand = dp[static_cast<std::size_t>(w - c)] + items[it].value;
                if (cand > dp[static_cast<std::size_t>(w)]) {
                    dp[static_cast<std::size_t>(w)] = cand;
                    take[it][static_cast<std::size_t>(w / 64)] |= 1ull << (w % 64);
                }
            }
        }
        long long w = cap;
        for (std::size_t it = items.size(); it-- > 0;) {
            if (take[it][static_cast<std::size_t>(w / 64)] >> (w % 64) & 1ull) {
                res.uncovered.push_back(items[it].leaf);
                res.gamma[items[it].edge] = items[it].need;
                w -= items[it].cost;
            }
        }
        std::sort(res.uncovered.begin(), res.uncovered.end());
        res.objective = round_integral(dp[static_cast<std::size_t>(cap)], "star oracle objective");
        res.best_bound = static_cast<double>(res.objective);
    }
    res.potentials = canonical_potentials(net, res.gamma, x);
    return res;
}

Instance star_from_knapsack(const std::vector<int>& g, const std::vector<int>& b, int K, int W) {
    if (g.empty() || g.size() != b.size())
        throw InputError("knapsack needs matching nonempty weight and value lists");
    if (K < 1) throw InputError("knapsack capacity must be positive");
    long long value_sum = 0;
    int u = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] < 1 || g[i] > K) throw InputError("knapsack weights must be in [1, K]");
        if (b[i] < 1) throw InputError("knapsack values must be positive");
        value_sum += b[i];
        u = std::max(u, g[i]);
    }
    if (W <= value_sum) throw InputError("centre weight must exceed the total item value");

    const double R = u + 1.0;
    std::vector<Node> nodes;
    nodes.push_back({W, false, 0.0, 0.0});
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g.size(); ++i) {
        nodes.push_back({b[i], false, 0.0, 0.0});
        edges.push_back({0, static_cast<int>(i) + 1, R - g[i], static_cast<double>(u), 1.0});
    }

    Instance inst;
    inst.network = Network(nodes, edges);
    inst.p = 1;
    inst.R = R;
    inst.B = K;
    return inst;
}

ExactResult solve_exact_enum(const Instance& inst, AttackerMode mode, bool want_table) {
    const int n = inst.network.node_count();
    if (binom_capped(n, inst.p, 100'000) > 100'000)
        throw GuardError("facility enumeration refuses more than 1e5 candidate sets");

    ExactResult result;
    result.best.value = -1.0;
    std::vector<int> comb(inst.p);
    std::iota(comb.begin(), comb.end(), 0);
    do {
        const AttackerResult att = mode == AttackerMode::Milp
                                       ? solve_attacker(inst, comb)
                                       : attacker_oracle_subsets(inst, comb);
        const double value = coverage(inst.network, att.gamma, comb, inst.R).demand;
        if (want_table) result.table.push_back({comb, value});
        if (value > result.best.value) {
            result.best.facilities = comb;
            result.best.gamma = att.gamma;
            result.best.value = value;
        }
    } while (next_combination(comb, n));
    return result;
}

} // namespace dmclp
