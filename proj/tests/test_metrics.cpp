#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmclp/errors.hpp"
#include "dmclp/instance.hpp"
#include "dmclp/metrics.hpp"
#include "dmclp/oracles.hpp"
#include "helpers.hpp"

TEST_CASE("bounds on a path") {
    // 0 -1- 1 -1- 2 with unit weights and unit caps, p=1, R=2. Nominally the
    // middle node covers everything; fully downgraded lengths are 2, so any
    // facility covers only itself.
    Instance inst;
    inst.network = path3_network(1.0, 1.0, 1.0, 1.0);
    inst.p = 1;
    inst.R = 2.0;
    inst.B = 1.0;
    auto b = bounds(inst);
    CHECK(b.ub == 3);
    CHECK(b.x_ub == FacilitySet{1});
    CHECK(b.lb == 1);
    CHECK(static_cast<int>(b.x_lb.size()) == 1);
}

TEST_CASE("bounds collapse when there is no slack") {
    Instance inst = random_instance(8, 2, 121, 0.4);
    for (auto& e : const_cast<std::vector<Edge>&>(inst.network.edges()))
        e.ub = 0.0;
    auto b = bounds(inst);
    CHECK(b.lb == b.ub);
    CHECK(b.x_lb == b.x_ub);
}

TEST_CASE("bounds sandwich the exact value") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        Instance inst = random_instance(7, 2, seed, 0.45);
        auto b = bounds(inst);
        auto exact = solve_exact_enum(inst);
        CHECK(b.lb <= exact.best.value + 1e-9);
        CHECK(exact.best.value <= b.ub + 1e-9);
    }
}

TEST_CASE("gap formula") {
    CHECK(gap_bs(100, 90) == doctest::Approx(10.0));
    CHECK(gap_bs(100, 100) == doctest::Approx(0.0));
    CHECK(gap_bs(100, 105) == doctest::Approx(-5.0));
    CHECK(gap_bs(3, 2) == doctest::Approx(100.0 / 3.0));
    CHECK_THROWS_AS(gap_bs(0, 5), InputError);
    CHECK_THROWS_AS(gap_bs(-2, 5), InputError);
}

TEST_CASE("insight is zero when the attacker is powerless") {
    Instance inst = random_instance(7, 2, 141, 0.4);
    for (auto& e : const_cast<std::vector<Edge>&>(inst.network.edges()))
        e.ub = 0.0;
    auto b = bounds(inst);
    auto ins = managerial_insight(inst, b.ub);
    CHECK(ins.mi_o == doctest::Approx(0.0));
    CHECK(ins.s_xub == b.ub);
    // the pessimistic planner agrees too: same network, same optimum value
    CHECK(ins.s_xlb == b.ub);
    CHECK(ins.mi_p == doctest::Approx(0.0));
}

TEST_CASE("saturated budget drives the naive planner down to the lower bound") {
    Instance inst = random_instance(7, 2, 151, 0.0);
    inst.B = saturation_budget(inst.network);
    auto b = bounds(inst);
    auto ins = managerial_insight(inst, b.lb);
    // locating for the worst case is exactly right under a saturated budget
    CHECK(ins.s_xlb == b.lb);
    CHECK(ins.mi_p == doctest::Approx(0.0));
    // the optimistic planner can only lose demand
    CHECK(ins.s_xub <= b.ub);
}

TEST_CASE("insight signs against the exact optimum") {
    for (std::uint64_t seed : {41u, 42u}) {
        Instance inst = random_instance(7, 2, seed, 0.5);
        auto exact = solve_exact_enum(inst);
        const long long bs_t = static_cast<long long>(exact.best.value);
        AttackerCache cache;
        auto ins = managerial_insight(inst, bs_t, &cache);
        // no placement beats the exact optimum, so both insights are <= 0
        CHECK(ins.mi_o <= 1e-9);
        CHECK(ins.mi_p <= 1e-9);
        CHECK(ins.s_xub <= bs_t);
        CHECK(ins.s_xlb <= bs_t);
    }
}

TEST_CASE("insight needs a positive reference value") {
    Instance inst = random_instance(6, 2, 161, 0.3);
    CHECK_THROWS_AS(managerial_insight(inst, 0), InputError);
    CHECK_THROWS_AS(managerial_insight(inst, -7), InputError);
}

TEST_CASE("shared cache avoids repeated attacks") {
    Instance inst = random_instance(7, 2, 171, 0.4);
    AttackerCache cache;
    auto first = managerial_insight(inst, 10, &cache);
    const size_t filled = cache.exact.size();
    CHECK(filled >= 1);
    auto second = managerial_insight(inst, 10, &cache);
    CHECK(cache.exact.size() == filled);
    CHECK(first.s_xub == second.s_xub);
    CHECK(first.s_xlb == second.s_xlb);
}
