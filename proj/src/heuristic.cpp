#include "dmclp/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dmclp/errors.hpp"
#include "dmclp/mclp.hpp"

namespace dmclp {

LsVariant parse_ls_variant(const std::string& s) {
    if (s == "none") return LsVariant::None;
    if (s == "fixed-out-in-a") return LsVariant::FixedOutInA;
    if (s == "fixed-out-in-b") return LsVariant::FixedOutInB;
    if (s == "fixed-out-opt-in-a") return LsVariant::FixedOutOptInA;
    if (s == "fixed-out-opt-in-b") return LsVariant::FixedOutOptInB;
    if (s == "optimal-out-in") return LsVariant::OptimalOutIn;
    throw InputError("unknown local-search variant: " + s);
}

std::string to_string(LsVariant v) {
    switch (v) {
    case LsVariant::None: return "none";
    case LsVariant::FixedOutInA: return "fixed-out-in-a";
    case LsVariant::FixedOutInB: return "fixed-out-in-b";
    case LsVariant::FixedOutOptInA: return "fixed-out-opt-in-a";
    case LsVariant::FixedOutOptInB: return "fixed-out-opt-in-b";
    case LsVariant::OptimalOutIn: return "optimal-out-in";
    }
    return "?";
}

namespace {

const AttackerResult& attack_exact(const Instance& inst, const FacilitySet& x,
                                   AttackerCache& cache) {
    auto it = cache.exact.find(x);
    if (it == cache.exact.end()) it = cache.exact.emplace(x, solve_attacker(inst, x)).first;
    return it->second;
}

// Attack used inside candidate loops: exact unless a time limit is set, in
// which case the incumbent may undervalue Q (so overvalue the candidate) and
// must not be reported as final. A limited solve that happens to finish
// promotes itself to the exact cache.
const AttackerResult& attack_limited(const Instance& inst, const FacilitySet& x,
                                     std::optional<double> time_limit, AttackerCache& cache) {
    if (!time_limit) return attack_exact(inst, x, cache);
    if (auto it = cache.exact.find(x); it != cache.exact.end()) return it->second;
    if (auto it = cache.limited.find(x); it != cache.limited.end()) return it->second;
    AttackerResult res = solve_attacker(inst, x, time_limit);
    auto& bucket = res.status == SolveStatus::Optimal ? cache.exact : cache.limited;
    return bucket.emplace(x, std::move(res)).first->second;
}

double attacked_value(const Instance& inst, const FacilitySet& x, const AttackerResult& att) {
    return static_cast<double>(coverage(inst.network, att.gamma, x, inst.R).demand);
}

// Covered set of a single facility per candidate node, all under one
// downgrade; the swap scores below are unions of these.
std::vector<std::vector<int>> cover_sets(const Network& net, const Downgrade& gamma, double R) {
    std::vector<std::vector<int>> cov(net.node_count());
    for (int v = 0; v < net.node_count(); ++v) cov[v] = coverage(net, gamma, {v}, R).nodes;
    return cov;
}

FacilitySet swap_one(const FacilitySet& x, int out, int in) {
    FacilitySet nx;
    nx.reserve(x.size());
    for (int f : x)
        if (f != out) nx.push_back(f);
    nx.insert(std::lower_bound(nx.begin(), nx.end(), in), in);
    return nx;
}

void require_iters(int iters) {
    if (iters < 1) throw InputError("iteration counts must be >= 1");
}

} // namespace

Downgrade starting_downgrade(const Instance& inst, int code) {
    const Network& net = inst.network;
    const int m = net.edge_count();
    switch (code) {
    case 0:
    case 5:
    case 6:
    case 7: return zero_downgrade(net);
    case 1: return full_downgrade(net);
    case 2: {
        Downgrade g(m);
        const double share = m > 0 ? inst.B / m : 0.0;
        for (int e = 0; e < m; ++e) g[e] = std::min(share, net.edges()[e].ub);
        return g;
    }
    case 3: {
        Downgrade g(m, 0.0);
        double total = 0.0;
        for (const Edge& e : net.edges()) total += e.ub;
        if (total > 0.0)
            for (int e = 0; e < m; ++e)
                g[e] = std::min(net.edges()[e].ub * inst.B / total, net.edges()[e].ub);
        return g;
    }
    case 4: {
        // cheapest cost rates soak up the budget first, last edge partially
        Downgrade g(m, 0.0);
        std::vector<int> order(m);
        for (int e = 0; e < m; ++e) order[e] = e;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return net.edges()[a].cost < net.edges()[b].cost;
        });
        double rem = inst.B;
        for (int e : order) {
            if (rem <= 0.0) break;
            const Edge& ed = net.edges()[e];
            g[e] = std::min(ed.ub, rem / ed.cost);
            rem -= ed.cost * g[e];
        }
        return g;
    }
    case 8: {
        Downgrade g(m);
        for (int e = 0; e < m; ++e) g[e] = net.edges()[e].ub / 2.0;
        return g;
    }
    default: throw InputError("unknown starting strategy code");
    }
}

FacilitySet starting_set(const Instance& inst, int code) {
    const Downgrade g = starting_downgrade(inst, code);
    double R = inst.R;
    if (code == 5) R *= 0.8;
    if (code == 6) R *= 0.7;
    if (code == 7) R *= 0.6;
    return solve_mclp(inst.network, g, inst.p, R).facilities;
}

Solution alternating_search(const Instance& inst, const FacilitySet& x0, int max_iters,
                            AttackerCache& cache) {
    require_iters(max_iters);
    Solution best;
    best.value = -1.0;
    std::set<FacilitySet> visited;
    FacilitySet x = x0;
    int iters = 0;
    for (;;) {
        visited.insert(x);
        const AttackerResult& att = attack_exact(inst, x, cache);
        ++iters;
        const double value = attacked_value(inst, x, att);
        if (value > best.value) {
            best.facilities = x;
            best.gamma = att.gamma;
            best.value = value;
        }
        if (iters >= max_iters) break;
        FacilitySet next = solve_mclp(inst.network, att.gamma, inst.p, inst.R).facilities;
        if (visited.count(next)) break;
        x = std::move(next);
    }
    best.trace.alt_iterations = iters;
    return best;
}

int ls_fixed_out_in(const Instance& inst, Solution& sol, bool version_b, int max_iters,
                    AttackerCache& cache) {
    require_iters(max_iters);
    const Network& net = inst.network;
    const int n = net.node_count();
    std::vector<std::vector<int>> cov_u;
    if (version_b) cov_u = cover_sets(net, full_downgrade(net), inst.R);

    int moves = 0;
    std::vector<char> in_x(n);
    std::vector<int> stamp(n, -1);
    for (int iter = 0; iter < max_iters; ++iter) {
        const auto cov_g = cover_sets(net, sol.gamma, inst.R);
        const auto& cov_in = version_b ? cov_u : cov_g;
        std::fill(in_x.begin(), in_x.end(), 0);
        for (int f : sol.facilities) in_x[f] = 1;

        long long best_score = -1;
        int best_out = -1, best_in = -1;
        int tick = iter * (n + 1);
        for (int out : sol.facilities) {
            ++tick;
            long long base = 0;
            for (int f : sol.facilities) {
                if (f == out) continue;
                for (int v : cov_g[f])
                    if (stamp[v] != tick) {
                        stamp[v] = tick;
                        base += net.nodes()[v].weight;
                    }
            }
            for (int in = 0; in < n; ++in) {
                if (in_x[in]) continue;
                long long score = base;
                for (int v : cov_in[in])
                    if (stamp[v] != tick) score += net.nodes()[v].weight;
                if (score > best_score) {
                    best_score = score;
                    best_out = out;
                    best_in = in;
                }
            }
        }
        if (best_out < 0) break; // no swap candidates at all

        const FacilitySet nx = swap_one(sol.facilities, best_out, best_in);
        const AttackerResult& att = attack_exact(inst, nx, cache);
        const double value = attacked_value(inst, nx, att);
        if (value <= sol.value) break;
        sol.facilities = nx;
        sol.gamma = att.gamma;
        sol.value = value;
        ++sol.trace.ls_moves;
        ++moves;
    }
    return moves;
}

int ls_fixed_out_opt_in(const Instance& inst, Solution& sol, bool version_b, int max_iters,
                        std::optional<double> attacker_time_limit, AttackerCache& cache) {
    require_iters(max_iters);
    const Network& net = inst.network;
    const int n = net.node_count();
    std::vector<std::vector<int>> cov_u;
    if (version_b) cov_u = cover_sets(net, full_downgrade(net), inst.R);

    int moves = 0;
    std::vector<char> in_x(n);
    std::vector<int> cnt(n);
    std::vector<std::vector<int>> cov_g;
    for (int iter = 0; iter < max_iters; ++iter) {
        if (!version_b) cov_g = cover_sets(net, sol.gamma, inst.R);
        const auto& cov = version_b ? cov_u : cov_g;
        // the leaving facility is the one whose exclusive coverage is worth
        // the least: demand nobody else in X reaches
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int f : sol.facilities)
            for (int v : cov[f]) ++cnt[v];
        long long best_loss = -1;
        int out = -1;
        for (int f : sol.facilities) {
            long long loss = 0;
            for (int v : cov[f])
                if (cnt[v] == 1) loss += net.nodes()[v].weight;
            if (out < 0 || loss < best_loss) {
                best_loss = loss;
                out = f;
            }
        }
        if (out < 0) break;

        std::fill(in_x.begin(), in_x.end(), 0);
        for (int f : sol.facilities) in_x[f] = 1;
        double best_value = -1.0;
        FacilitySet best_nx;
        for (int in = 0; in < n; ++in) {
            if (in_x[in]) continue;
            FacilitySet nx = swap_one(sol.facilities, out, in);
            const AttackerResult& att = attack_limited(inst, nx, attacker_time_limit, cache);
            const double value = attacked_value(inst, nx, att);
            if (value > best_value) {
                best_value = value;
                best_nx = std::move(nx);
            }
        }
        if (best_nx.empty()) break;

        const AttackerResult& att = attack_exact(inst, best_nx, cache);
        const double value = attacked_value(inst, best_nx, att);
        if (value <= sol.value) break;
        sol.facilities = best_nx;
        sol.gamma = att.gamma;
        sol.value = value;
        ++sol.trace.ls_moves;
        ++moves;
    }
    return moves;
}

int ls_optimal_out_in(const Instance& inst, Solution& sol, int max_iters,
                      std::optional<double> attacker_time_limit, AttackerCache& cache) {
    require_iters(max_iters);
    const Network& net = inst.network;
    const int n = net.node_count();

    int moves = 0;
    std::vector<char> in_x(n);
    for (int iter = 0; iter < max_iters; ++iter) {
        std::fill(in_x.begin(), in_x.end(), 0);
        for (int f : sol.facilities) in_x[f] = 1;

        double best_value = -1.0;
        FacilitySet best_nx;
        for (int out : sol.facilities) {
            for (int in = 0; in < n; ++in) {
                if (in_x[in]) continue;
                FacilitySet nx = swap_one(sol.facilities, out, in);
                const AttackerResult& att = attack_limited(inst, nx, attacker_time_limit, cache);
                const double value = attacked_value(inst, nx, att);
                if (value > best_value) {
                    best_value = value;
                    best_nx = std::move(nx);
                }
            }
        }
        if (best_nx.empty()) break;

        const AttackerResult& att = attack_exact(inst, best_nx, cache);
        const double value = attacked_value(inst, best_nx, att);
        if (value <= sol.value) break;
        sol.facilities = best_nx;
        sol.gamma = att.gamma;
        sol.value = value;
        ++sol.trace.ls_moves;
        ++moves;
    }
    return moves;
}

Solution run_matheuristic(const Instance& inst, const HeuristicConfig& cfg,
                          AttackerCache* cache) {
    if (cfg.strategies.empty()) throw InputError("at least one starting strategy is required");
    require_iters(cfg.max_alt_iters);

    AttackerCache own;
    AttackerCache& c = cache ? *cache : own;

    std::vector<int> codes = cfg.strategies;
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

    Solution best;
    best.value = -1.0;
    for (int code : codes) {
        const FacilitySet x0 = starting_set(inst, code);
        Solution s = alternating_search(inst, x0, cfg.max_alt_iters, c);
        s.trace.strategy = code;
        if (s.value > best.value) best = std::move(s);
    }

    int ls_iters = cfg.ls_max_iters;
    if (ls_iters <= 0) ls_iters = cfg.ls == LsVariant::OptimalOutIn ? 10 : 50;
    switch (cfg.ls) {
    case LsVariant::None: break;
    case LsVariant::FixedOutInA: ls_fixed_out_in(inst, best, false, ls_iters, c); break;
    case LsVariant::FixedOutInB: ls_fixed_out_in(inst, best, true, ls_iters, c); break;
    case LsVariant::FixedOutOptInA:
        ls_fixed_out_opt_in(inst, best, false, ls_iters, cfg.attacker_time_limit, c);
        break;
    case LsVariant::FixedOutOptInB:
        ls_fixed_out_opt_in(inst, best, true, ls_iters, cfg.attacker_time_limit, c);
        break;
    case LsVariant::OptimalOutIn:
        ls_optimal_out_in(inst, best, ls_iters, cfg.attacker_time_limit, c);
        break;
    }

    // a final fresh attack backs the reported value and downgrade, so no
    // cached or time-limited figure ever leaves this function
    const AttackerResult att = solve_attacker(inst, best.facilities);
    best.gamma = att.gamma;
    best.value = attacked_value(inst, best.facilities, att);
    return best;
}

} // namespace dmclp
