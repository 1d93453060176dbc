#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dmclp/errors.hpp"
#include "dmclp/heuristic.hpp"
#include "dmclp/instance.hpp"
#include "dmclp/mclp.hpp"
#include "dmclp/oracles.hpp"
#include "helpers.hpp"

namespace {

long long post_attack_value(const Instance& inst, const FacilitySet& x) {
    auto res = solve_attacker(inst, x);
    return coverage(inst.network, zero_downgrade(inst.network), x, inst.R).demand -
           res.objective;
}

} // namespace

TEST_CASE("local search variant names round-trip") {
    for (LsVariant v : {LsVariant::None, LsVariant::FixedOutInA, LsVariant::FixedOutInB,
                        LsVariant::FixedOutOptInA, LsVariant::FixedOutOptInB,
                        LsVariant::OptimalOutIn})
        CHECK(parse_ls_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_ls_variant("bogus"), InputError);
}

TEST_CASE("starting downgrades by code") {
    // three edges with caps (2, 2, 2), costs (1, 2, 3), budget 5
    std::vector<Node> nodes(4, Node{1, false, 0.0, 0.0});
    std::vector<Edge> edges(3);
    edges[0] = {0, 1, 1.0, 2.0, 1.0};
    edges[1] = {1, 2, 1.0, 2.0, 2.0};
    edges[2] = {2, 3, 1.0, 2.0, 3.0};
    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = 1;
    inst.R = 2.0;
    inst.B = 5.0;

    auto g0 = starting_downgrade(inst, 0);
    for (double g : g0) CHECK(g == doctest::Approx(0.0));

    auto g1 = starting_downgrade(inst, 1);
    CHECK(g1[0] == doctest::Approx(2.0));
    CHECK(g1[2] == doctest::Approx(2.0));

    auto g2 = starting_downgrade(inst, 2); // B/m = 5/3 < all caps
    for (double g : g2) CHECK(g == doctest::Approx(5.0 / 3.0));

    auto g3 = starting_downgrade(inst, 3); // u_e * B / sum u = 2*5/6 = 5/3
    for (double g : g3) CHECK(g == doctest::Approx(5.0 / 3.0));

    // greedy by cost rate: edge 0 gets its full cap for 2, edge 1 full for 4,
    // edge 2 gets the remaining budget 1 -> 1/3 of length
    auto g4 = starting_downgrade(inst, 4);
    CHECK(g4[0] == doctest::Approx(2.0));
    CHECK(g4[1] == doctest::Approx(1.5)); // leftover 3 buys 1.5 at cost 2
    CHECK(g4[2] == doctest::Approx(0.0));

    for (int code : {5, 6, 7}) {
        auto g = starting_downgrade(inst, code);
        for (double v : g) CHECK(v == doctest::Approx(0.0));
    }

    auto g8 = starting_downgrade(inst, 8);
    for (double g : g8) CHECK(g == doctest::Approx(1.0));

    CHECK_THROWS_AS(starting_downgrade(inst, -1), InputError);
    CHECK_THROWS_AS(starting_downgrade(inst, 9), InputError);

    // codes 2 and 3 split the budget cost-blind (they only seed the location
    // model); the greedy code is the one that respects the budget by design
    {
        auto g = starting_downgrade(inst, 4);
        double spent = 0.0;
        for (int e = 0; e < 3; ++e) spent += g[e] * inst.network.edges()[e].cost;
        CHECK(spent <= inst.B + 1e-9);
    }
    // every code yields a valid downgrade vector
    for (int code = 0; code <= 8; ++code) check_downgrade(inst.network, starting_downgrade(inst, code));
}

TEST_CASE("starting sets follow the downgraded location model") {
    Instance inst = random_instance(8, 2, 61, 0.45);
    auto s0 = starting_set(inst, 0);
    auto mclp0 = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, inst.R);
    CHECK(s0 == mclp0.facilities);

    auto s1 = starting_set(inst, 1);
    auto mclp1 = solve_mclp(inst.network, full_downgrade(inst.network), inst.p, inst.R);
    CHECK(s1 == mclp1.facilities);

    auto s5 = starting_set(inst, 5);
    auto mclp5 = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, 0.8 * inst.R);
    CHECK(s5 == mclp5.facilities);
}

TEST_CASE("alternating search with nothing to attack stops immediately") {
    Instance inst = random_instance(7, 2, 71, 0.3);
    for (auto& e : const_cast<std::vector<Edge>&>(inst.network.edges()))
        e.ub = 0.0;
    AttackerCache cache;
    auto x0 = starting_set(inst, 0);
    auto sol = alternating_search(inst, x0, 30, cache);
    auto mclp = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, inst.R);
    CHECK(sol.value == doctest::Approx(static_cast<double>(mclp.covered_demand)));
    CHECK(sol.trace.alt_iterations == 1);
    CHECK(sol.facilities == x0);
}

TEST_CASE("alternating search value is the exact post-attack demand") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        Instance inst = random_instance(8, 2, 300 + seed, 0.5);
        AttackerCache cache;
        auto sol = alternating_search(inst, starting_set(inst, 0), 30, cache);
        CHECK(sol.value == doctest::Approx(static_cast<double>(post_attack_value(inst, sol.facilities))));
        CHECK(uncovered_after(inst.network, sol.facilities, sol.gamma, inst.R).demand ==
              coverage(inst.network, zero_downgrade(inst.network), sol.facilities, inst.R).demand -
                  static_cast<long long>(std::llround(sol.value)));
        CHECK(sol.trace.alt_iterations >= 1);
    }
}

TEST_CASE("local search never worsens the incumbent") {
    for (std::uint64_t seed : {1u, 2u}) {
        Instance inst = random_instance(8, 2, 400 + seed, 0.45);
        AttackerCache cache;
        auto base = alternating_search(inst, starting_set(inst, 1), 30, cache);

        for (auto runner : {+[](const Instance& in, Solution& s, AttackerCache& c) {
                                return ls_fixed_out_in(in, s, false, 50, c);
                            },
                            +[](const Instance& in, Solution& s, AttackerCache& c) {
                                return ls_fixed_out_in(in, s, true, 50, c);
                            },
                            +[](const Instance& in, Solution& s, AttackerCache& c) {
                                return ls_fixed_out_opt_in(in, s, false, 50, {}, c);
                            },
                            +[](const Instance& in, Solution& s, AttackerCache& c) {
                                return ls_fixed_out_opt_in(in, s, true, 50, {}, c);
                            },
                            +[](const Instance& in, Solution& s, AttackerCache& c) {
                                return ls_optimal_out_in(in, s, 10, {}, c);
                            }}) {
            Solution sol = base;
            int moves = runner(inst, sol, cache);
            CHECK(moves >= 0);
            CHECK(sol.value >= base.value);
            // claimed value still matches a fresh exact attack
            CHECK(sol.value ==
                  doctest::Approx(static_cast<double>(post_attack_value(inst, sol.facilities))));
        }
    }
}

TEST_CASE("optimal swap pricing dominates the fixed pairing on average") {
    double sum_fixed = 0.0, sum_opt = 0.0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Instance inst = random_instance(8, 2, 500 + seed, 0.5);
        AttackerCache cache;
        auto base = alternating_search(inst, starting_set(inst, 0), 30, cache);
        Solution a = base, b = base;
        ls_fixed_out_in(inst, a, false, 50, cache);
        ls_optimal_out_in(inst, b, 10, {}, cache);
        sum_fixed += a.value;
        sum_opt += b.value;
        CHECK(b.value >= base.value);
    }
    CHECK(sum_opt >= sum_fixed - 1e-9);
}

TEST_CASE("full matheuristic with no slack returns the plain location optimum") {
    Instance inst = random_instance(7, 2, 83, 0.3);
    for (auto& e : const_cast<std::vector<Edge>&>(inst.network.edges()))
        e.ub = 0.0;
    auto sol = run_matheuristic(inst);
    auto mclp = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, inst.R);
    CHECK(sol.value == doctest::Approx(static_cast<double>(mclp.covered_demand)));
    for (double g : sol.gamma) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("matheuristic beats or matches its own ingredients") {
    for (std::uint64_t seed : {11u, 12u}) {
        Instance inst = random_instance(8, 2, 600 + seed, 0.5);
        AttackerCache cache;
        HeuristicConfig cfg;
        auto sol = run_matheuristic(inst, cfg, &cache);

        // dominates every bare alternating run it was built from
        for (int code : cfg.strategies) {
            auto alt = alternating_search(inst, starting_set(inst, code), cfg.max_alt_iters, cache);
            CHECK(sol.value >= alt.value - 1e-9);
        }
        // reported gamma is an exact attack on the reported facilities
        auto fresh = solve_attacker(inst, sol.facilities);
        CHECK(coverage(inst.network, zero_downgrade(inst.network), sol.facilities, inst.R).demand -
                  fresh.objective ==
              doctest::Approx(sol.value));
        CHECK(uncovered_after(inst.network, sol.facilities, sol.gamma, inst.R).demand ==
              fresh.objective);
        CHECK(sol.trace.strategy >= 0);
        CHECK(sol.trace.strategy <= 8);
    }
}

TEST_CASE("matheuristic accepts a strategy subset and rejects junk") {
    Instance inst = random_instance(6, 2, 91, 0.4);
    HeuristicConfig cfg;
    cfg.strategies = {4, 0, 0, 2}; // unordered with duplicates is fine
    cfg.ls = LsVariant::None;
    auto sol = run_matheuristic(inst, cfg);
    CHECK(sol.trace.strategy >= 0);
    CHECK(sol.value >= 0.0);

    cfg.strategies = {0, 42};
    CHECK_THROWS_AS(run_matheuristic(inst, cfg), InputError);
    cfg.strategies = {};
    CHECK_THROWS_AS(run_matheuristic(inst, cfg), InputError);
}

TEST_CASE("matheuristic on the knapsack star keeps the centre") {
    // Attack takes leaves worth 11; centre plus remaining leaf keep 50 + 10.
    Instance inst = star_from_knapsack({2, 3, 4}, {5, 6, 10}, 5, 50);
    auto sol = run_matheuristic(inst);
    CHECK(sol.facilities == FacilitySet{0});
    CHECK(sol.value == doctest::Approx(60.0)); // 71 total demand - 11 attacked
}

TEST_CASE("cache is shared and reused across calls") {
    Instance inst = random_instance(7, 2, 95, 0.4);
    AttackerCache cache;
    run_matheuristic(inst, {}, &cache);
    const size_t filled = cache.exact.size();
    CHECK(filled > 0);
    // a second identical run adds nothing new
    run_matheuristic(inst, {}, &cache);
    CHECK(cache.exact.size() == filled);
}
