#pragma once

// Shared fixtures: the five-node example graph used across the coverage and
// attacker tests, tiny hand-checkable networks, and seeded random instances.

#include <cstdint>
#include <numeric>
#include <vector>

#include "dmclp/graph.hpp"
#include "dmclp/instance.hpp"
#include "dmclp/rng.hpp"

using namespace dmclp;

// Five nodes i,l,m,x1,x2 -> 0..4. Facility candidates x1,x2 sit close to l
// and m; i is reachable from both sides. Hand-checked distances from x1:
// i 2.75, l 1.5, m 4.5, x2 5.5.
inline Network fig1_network(double ub = 3.0, double cost = 1.0) {
    const std::vector<Node> nodes = {{5, false, 0, 0},
                                     {3, false, 0, 0},
                                     {2, false, 0, 0},
                                     {1, false, 0, 0},
                                     {1, false, 0, 0}};
    const std::vector<Edge> edges = {
        {1, 2, 3.0, ub, cost},  // l-m
        {0, 1, 2.5, ub, cost},  // i-l
        {0, 2, 2.5, ub, cost},  // i-m
        {0, 3, 2.75, ub, cost}, // i-x1
        {1, 3, 1.5, ub, cost},  // l-x1
        {0, 4, 2.75, ub, cost}, // i-x2
        {2, 4, 1.5, ub, cost},  // m-x2
    };
    return Network(nodes, edges);
}

inline Instance fig1_instance(int p, double R, double B, double ub = 3.0, double cost = 1.0) {
    Instance inst;
    inst.network = fig1_network(ub, cost);
    inst.p = p;
    inst.R = R;
    inst.B = B;
    return inst;
}

// 0 - 1 - 2 path, unit weights.
inline Network path3_network(double l1 = 1.0, double l2 = 1.0, double u1 = 1.0, double u2 = 1.0) {
    const std::vector<Node> nodes = {{1, false, 0, 0}, {1, false, 0, 0}, {1, false, 0, 0}};
    const std::vector<Edge> edges = {{0, 1, l1, u1, 1.0}, {1, 2, l2, u2, 1.0}};
    return Network(nodes, edges);
}

inline double saturation_budget(const Network& net) {
    double b = 0.0;
    for (const Edge& e : net.edges()) b += e.cost * e.ub;
    return b;
}

// Generated instance with p and budget overridden: the generator's budget
// formula vanishes at p = 1, so tests set B as a fraction of the saturation
// spend instead.
inline Instance random_instance(int n, int p, std::uint64_t seed, double b_frac,
                                RadiusMode rm = RadiusMode::Cover1) {
    Instance inst = generate({n, PMode::Over10, rm, 0.1, seed});
    inst.p = p;
    inst.B = round2(b_frac * saturation_budget(inst.network));
    return inst;
}

inline FacilitySet random_facilities(Rng& rng, int n, int p) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < p; ++i) std::swap(ids[i], ids[uniform_int(rng, i, n - 1)]);
    FacilitySet x(ids.begin(), ids.begin() + p);
    std::sort(x.begin(), x.end());
    return x;
}
