#pragma once

#include <vector>

namespace dmclp {

struct Node {
    long long weight = 0;
    bool has_xy = false;
    double x = 0.0, y = 0.0;
};

// Undirected edge: nominal length len, downgrade cap ub (how much the length
// may be increased), per-unit downgrade cost.
struct Edge {
    int a = -1, b = -1;
    double len = 0.0;
    double ub = 0.0;
    double cost = 0.0;
};

class Network {
public:
    Network() = default;
    // Validates (contiguous ids, no self loops or duplicate pairs, len > 0,
    // cost > 0, ub >= 0, weights >= 0) and builds the adjacency lists.
    Network(std::vector<Node> nodes, std::vector<Edge> edges);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    // (neighbor node, edge index) pairs of v.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    long long total_weight() const { return total_weight_; }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    long long total_weight_ = 0;
};

struct Instance {
    Network network;
    int p = 1;     // facilities to locate
    double R = 0;  // coverage radius
    double B = 0;  // attacker budget
};

void validate_instance(const Instance& inst);

// Per-edge downgrade amounts, aligned with Network::edges().
using Downgrade = std::vector<double>;
// Sorted, duplicate-free node ids.
using FacilitySet = std::vector<int>;

// A node is covered iff its distance to the nearest facility is < R - eps.
// The attacker model works with d >= R exactly; the epsilon keeps evaluation
// of boundary solutions (distances landing exactly on R) unambiguous.
inline constexpr double kCoverEps = 1e-6;

Downgrade zero_downgrade(const Network& net);
Downgrade full_downgrade(const Network& net); // gamma = ub on every edge
void check_downgrade(const Network& net, const Downgrade& gamma);
FacilitySet make_facility_set(std::vector<int> ids, const Network& net);

// Multi-source Dijkstra on lengths len + gamma. Unreachable nodes get +inf.
// Heap ties resolve toward the smaller node id, so results are reproducible
// bit for bit.
std::vector<double> shortest_distances(const Network& net, const Downgrade& gamma,
                                       const FacilitySet& sources);

struct Coverage {
    std::vector<int> nodes; // ascending ids
    long long demand = 0;
};

Coverage coverage(const Network& net, const Downgrade& gamma, const FacilitySet& x,
                  double R, double eps = kCoverEps);

// Nodes covered by x at gamma = 0 that the downgrade gamma un-covers.
Coverage uncovered_after(const Network& net, const FacilitySet& x, const Downgrade& gamma,
                         double R, double eps = kCoverEps);

} // namespace dmclp
