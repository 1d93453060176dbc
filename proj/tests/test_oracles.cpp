#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dmclp/errors.hpp"
#include "dmclp/instance.hpp"
#include "dmclp/mclp.hpp"
#include "dmclp/oracles.hpp"
#include "helpers.hpp"

namespace {

Instance small_star(std::vector<long long> leaf_w, std::vector<double> lens,
                    std::vector<double> ubs, double R, double B, long long centre_w = 100) {
    const int k = static_cast<int>(leaf_w.size());
    std::vector<Node> nodes;
    nodes.push_back({centre_w, false, 0.0, 0.0});
    for (long long w : leaf_w) nodes.push_back({w, false, 0.0, 0.0});
    std::vector<Edge> edges(k);
    for (int i = 0; i < k; ++i) {
        edges[i].a = 0;
        edges[i].b = i + 1;
        edges[i].len = lens[i];
        edges[i].ub = ubs[i];
        edges[i].cost = 1.0;
    }
    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = 1;
    inst.R = R;
    inst.B = B;
    return inst;
}

} // namespace

TEST_CASE("knapsack embedding builds the advertised star") {
    Instance inst = star_from_knapsack({2, 3, 4}, {5, 6, 10}, 5, 50);
    CHECK(inst.network.node_count() == 4);
    CHECK(inst.network.edge_count() == 3);
    CHECK(inst.p == 1);
    CHECK(inst.R == doctest::Approx(5.0)); // max weight + 1
    CHECK(inst.B == doctest::Approx(5.0));
    CHECK(inst.network.nodes()[0].weight == 50);
    for (int i = 0; i < 3; ++i) {
        const Edge& e = inst.network.edges()[i];
        CHECK(e.a == 0);
        CHECK(e.b == i + 1);
        CHECK(e.cost == doctest::Approx(1.0));
        // pushing leaf i out of coverage costs exactly g_i
        CHECK(inst.R - e.len == doctest::Approx(std::vector<int>{2, 3, 4}[i]));
        CHECK(e.ub >= inst.R - e.len);
    }
    CHECK(inst.network.nodes()[1].weight == 5);
    CHECK(inst.network.nodes()[3].weight == 10);
}

TEST_CASE("knapsack embedding validates its arguments") {
    CHECK_THROWS_AS(star_from_knapsack({}, {}, 5, 50), InputError);
    CHECK_THROWS_AS(star_from_knapsack({1, 2}, {3}, 5, 50), InputError);
    CHECK_THROWS_AS(star_from_knapsack({1}, {3}, 0, 50), InputError);
    CHECK_THROWS_AS(star_from_knapsack({6}, {3}, 5, 50), InputError);  // weight > K
    CHECK_THROWS_AS(star_from_knapsack({0}, {3}, 5, 50), InputError);  // weight < 1
    CHECK_THROWS_AS(star_from_knapsack({1}, {0}, 5, 50), InputError);  // value < 1
    CHECK_THROWS_AS(star_from_knapsack({1}, {3}, 5, 3), InputError);   // centre too light
}

TEST_CASE("star oracle solves the worked knapsack") {
    // items (weight, value): (2,5), (3,6), (4,10), capacity 5.
    // {1,2} fits at weight 5 for value 11; {3} alone gives 10. Optimum 11.
    Instance inst = star_from_knapsack({2, 3, 4}, {5, 6, 10}, 5, 50);
    auto x = make_facility_set({0}, inst.network);
    auto res = attacker_oracle_star(inst, x);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.objective == 11);
    CHECK(res.uncovered == std::vector<int>{1, 2});
    // gamma pays exactly R - len on the taken spokes, nothing elsewhere
    CHECK(res.gamma[0] == doctest::Approx(2.0));
    CHECK(res.gamma[1] == doctest::Approx(3.0));
    CHECK(res.gamma[2] == doctest::Approx(0.0));

    // the MILP and the subsets oracle agree
    CHECK(solve_attacker(inst, x).objective == 11);
    CHECK(attacker_oracle_subsets(inst, x).objective == 11);
}

TEST_CASE("single item star") {
    Instance inst = star_from_knapsack({1}, {7}, 1, 8);
    auto x = make_facility_set({0}, inst.network);
    CHECK(attacker_oracle_star(inst, x).objective == 7);
    CHECK(solve_attacker(inst, x).objective == 7);
}

TEST_CASE("star oracle edge cases") {
    // zero budget
    Instance inst = small_star({5, 6}, {1.0, 2.0}, {5.0, 5.0}, 4.0, 0.0);
    auto x = make_facility_set({0}, inst.network);
    CHECK(attacker_oracle_star(inst, x).objective == 0);

    // caps too small to push any leaf to the radius
    Instance weak = small_star({5, 6}, {1.0, 2.0}, {2.9, 1.9}, 4.0, 100.0);
    auto weak_res = attacker_oracle_star(weak, x);
    CHECK(weak_res.objective == 0);
    CHECK(weak_res.uncovered.empty());

    // leaves already out of coverage contribute nothing
    Instance far = small_star({5, 6}, {4.0, 1.0}, {5.0, 5.0}, 4.0, 100.0);
    auto far_res = attacker_oracle_star(far, x);
    CHECK(far_res.objective == 6); // only the near leaf can be newly uncovered
}

TEST_CASE("star oracle input validation") {
    Instance inst = small_star({5, 6}, {1.0, 2.0}, {5.0, 5.0}, 4.0, 3.0);
    CHECK_THROWS_AS(attacker_oracle_star(inst, make_facility_set({1}, inst.network)),
                    InputError); // facility not at the centre

    Instance path;
    {
        std::vector<Node> nodes(3, Node{1, false, 0.0, 0.0});
        std::vector<Edge> edges(2);
        edges[0] = {0, 1, 1.0, 1.0, 1.0};
        edges[1] = {1, 2, 1.0, 1.0, 1.0};
        path.network = Network(std::move(nodes), std::move(edges));
        path.p = 1;
        path.R = 4.0;
        path.B = 1.0;
    }
    // a path of 3 nodes is a star centred at node 1, but node 0 is not a hub
    CHECK_THROWS_AS(attacker_oracle_star(path, make_facility_set({0}, path.network)), InputError);

    // cost * (R - len) must land on whole cents; 1.13 * 2.97 = 3.3561 does not
    Instance bad_cost = small_star({5}, {1.03}, {5.0}, 4.0, 3.0);
    const_cast<Edge&>(bad_cost.network.edges()[0]).cost = 1.13;
    CHECK_THROWS_AS(attacker_oracle_star(bad_cost, make_facility_set({0}, bad_cost.network)),
                    InputError);

    Instance huge = small_star({5}, {1.0}, {5.0}, 4.0, 2e5 + 1.0);
    CHECK_THROWS_AS(attacker_oracle_star(huge, make_facility_set({0}, huge.network)), GuardError);
}

TEST_CASE("star oracle matches the MILP on random stars") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(900 + seed);
        const int k = 2 + static_cast<int>(uniform_int(rng, 0, 6));
        std::vector<long long> w(k);
        std::vector<double> lens(k), ubs(k);
        for (int i = 0; i < k; ++i) {
            w[i] = uniform_int(rng, 1, 40);
            lens[i] = round2(uniform_real(rng, 0.5, 5.0));
            ubs[i] = round2(uniform_real(rng, 0.0, 6.0));
        }
        const double R = round2(uniform_real(rng, 1.0, 6.0));
        const double B = round2(uniform_real(rng, 0.0, 8.0));
        Instance inst = small_star(w, lens, ubs, R, B);
        auto x = make_facility_set({0}, inst.network);
        auto fast = attacker_oracle_star(inst, x);
        auto milp = solve_attacker(inst, x);
        INFO("seed ", seed, " k ", k, " R ", R, " B ", B);
        CHECK(fast.objective == milp.objective);
        CHECK(fast.status == SolveStatus::Optimal);
        // oracle attack is honest: the evaluator confirms the claim
        CHECK(uncovered_after(inst.network, x, fast.gamma, inst.R).demand == fast.objective);
    }
}

TEST_CASE("subsets oracle basics") {
    Instance inst = fig1_instance(2, 4.0, 3.0);
    auto x = make_facility_set({3, 4}, inst.network);
    auto res = attacker_oracle_subsets(inst, x);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.objective == 5);
    CHECK(res.uncovered == std::vector<int>{0});
    CHECK(uncovered_after(inst.network, x, res.gamma, inst.R).demand == 5);

    inst.B = 0.0;
    CHECK(attacker_oracle_subsets(inst, x).objective == 0);
}

TEST_CASE("subsets oracle matches the MILP on random instances") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = random_instance(7, 2, 700 + seed, 0.35);
        Rng rng(seed);
        auto x = random_facilities(rng, 7, 2);
        auto oracle = attacker_oracle_subsets(inst, x);
        auto milp = solve_attacker(inst, x);
        INFO("seed ", seed);
        CHECK(oracle.objective == milp.objective);
    }
}

TEST_CASE("subsets oracle refuses wide coverage") {
    // complete graph on 18 unit-weight nodes, all lengths 1, R = 2:
    // one facility covers all 18 nodes, past the 16-node guard.
    const int n = 18;
    std::vector<Node> nodes(n, Node{1, false, 0.0, 0.0});
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Edge e;
            e.a = i;
            e.b = j;
            e.len = 1.0;
            e.ub = 0.5;
            e.cost = 1.0;
            edges.push_back(e);
        }
    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = 1;
    inst.R = 2.0;
    inst.B = 4.0;
    CHECK_THROWS_AS(attacker_oracle_subsets(inst, make_facility_set({0}, inst.network)),
                    GuardError);
}

TEST_CASE("exact enumeration with no downgrade slack reduces to coverage") {
    Instance inst = random_instance(7, 2, 44, 0.3);
    for (auto& e : const_cast<std::vector<Edge>&>(inst.network.edges()))
        e.ub = 0.0;
    inst.B = 5.0;
    auto exact = solve_exact_enum(inst);
    auto plain = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, inst.R);
    CHECK(exact.best.value == plain.covered_demand);
}

TEST_CASE("exact enumeration under saturation matches worst-case placement") {
    Instance inst = random_instance(6, 2, 55, 0.0);
    inst.B = saturation_budget(inst.network);
    auto exact = solve_exact_enum(inst);
    auto worst = solve_mclp(inst.network, full_downgrade(inst.network), inst.p, inst.R);
    CHECK(exact.best.value == worst.covered_demand);
}

TEST_CASE("exact enumeration agrees across attacker modes and fills the table") {
    for (std::uint64_t seed : {21u, 22u}) {
        Instance inst = random_instance(6, 2, seed, 0.4);
        auto milp = solve_exact_enum(inst, AttackerMode::Milp, true);
        auto oracle = solve_exact_enum(inst, AttackerMode::Oracle, true);
        CHECK(milp.best.value == oracle.best.value);
        CHECK(milp.best.facilities == oracle.best.facilities);
        REQUIRE(milp.table.size() == 15); // C(6,2)
        REQUIRE(oracle.table.size() == 15);
        for (size_t i = 0; i < milp.table.size(); ++i) {
            CHECK(milp.table[i].facilities == oracle.table[i].facilities);
            CHECK(milp.table[i].value == doctest::Approx(oracle.table[i].value));
        }
        CHECK(std::is_sorted(milp.table.begin(), milp.table.end(),
                             [](const ExactEntry& a, const ExactEntry& b) {
                                 return a.facilities < b.facilities;
                             }));
        // the best row really is the max
        double best = -1;
        for (const auto& row : milp.table) best = std::max(best, row.value);
        CHECK(milp.best.value == doctest::Approx(best));
        // table is skipped unless requested
        CHECK(solve_exact_enum(inst).table.empty());
    }
}

TEST_CASE("exact enumeration refuses oversized instances") {
    std::vector<Node> nodes(50, Node{1, false, 0.0, 0.0});
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < 50; ++i) {
        Edge e;
        e.a = i;
        e.b = i + 1;
        e.len = 1.0;
        e.ub = 0.5;
        e.cost = 1.0;
        edges.push_back(e);
    }
    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = 4; // C(50,4) = 230300 > 1e5
    inst.R = 1.5;
    inst.B = 1.0;
    CHECK_THROWS_AS(solve_exact_enum(inst), GuardError);
}
