#include "dmclp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "dmclp/errors.hpp"

namespace dmclp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

} // namespace

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    require(!nodes_.empty(), "network needs at least one node");
    const int n = node_count();
    for (int i = 0; i < n; ++i) {
        require(nodes_[i].weight >= 0, "node " + std::to_string(i) + ": negative weight");
        if (nodes_[i].has_xy)
            require(std::isfinite(nodes_[i].x) && std::isfinite(nodes_[i].y),
                    "node " + std::to_string(i) + ": non-finite coordinates");
        total_weight_ += nodes_[i].weight;
    }
    adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        const std::string tag = "edge " + std::to_string(e);
        require(ed.a >= 0 && ed.a < n && ed.b >= 0 && ed.b < n, tag + ": endpoint out of range");
        require(ed.a != ed.b, tag + ": self loop");
        auto key = std::minmax(ed.a, ed.b);
        require(seen.insert(key).second, tag + ": duplicate node pair");
        require(std::isfinite(ed.len) && ed.len > 0, tag + ": length must be positive");
        require(std::isfinite(ed.cost) && ed.cost > 0, tag + ": cost must be positive");
        require(std::isfinite(ed.ub) && ed.ub >= 0, tag + ": negative downgrade bound");
        adj_[ed.a].emplace_back(ed.b, e);
        adj_[ed.b].emplace_back(ed.a, e);
    }
}

void validate_instance(const Instance& inst) {
    const int n = inst.network.node_count();
    require(inst.p >= 1 && inst.p <= n, "p must be in [1, n]");
    require(std::isfinite(inst.R) && inst.R > 0, "R must be positive");
    require(std::isfinite(inst.B) && inst.B >= 0, "B must be nonnegative");
}

Downgrade zero_downgrade(const Network& net) {
    return Downgrade(net.edge_count(), 0.0);
}

Downgrade full_downgrade(const Network& net) {
    Downgrade g(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) g[e] = net.edges()[e].ub;
    return g;
}

void check_downgrade(const Network& net, const Downgrade& gamma) {
    require(static_cast<int>(gamma.size()) == net.edge_count(),
            "downgrade vector size does not match edge count");
    for (int e = 0; e < net.edge_count(); ++e) {
        require(std::isfinite(gamma[e]) && gamma[e] >= -1e-9 &&
                    gamma[e] <= net.edges()[e].ub + 1e-9,
                "downgrade on edge " + std::to_string(e) + " outside [0, u]");
    }
}

FacilitySet make_facility_set(std::vector<int> ids, const Network& net) {
    std::sort(ids.begin(), ids.end());
    require(std::adjacent_find(ids.begin(), ids.end()) == ids.end(),
            "duplicate facility id");
    require(!ids.empty(), "facility set is empty");
    require(ids.front() >= 0 && ids.back() < net.node_count(), "facility id out of range");
    return ids;
}

std::vector<double> shortest_distances(const Network& net, const Downgrade& gamma,
                                       const FacilitySet& sources) {
    check_downgrade(net, gamma);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.node_count(), inf);
    // (distance, node) min-heap; equal distances pop the smaller id first.
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>>
        heap;
    for (int s : sources) {
        if (s < 0 || s >= net.node_count()) throw InputError("source node out of range");
        dist[s] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue; // stale entry
        for (auto [w, e] : net.neighbors(v)) {
            double nd = d + net.edges()[e].len + gamma[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    return dist;
}

Coverage coverage(const Network& net, const Downgrade& gamma, const FacilitySet& x,
                  double R, double eps) {
    auto dist = shortest_distances(net, gamma, x);
    Coverage cov;
    for (int i = 0; i < net.node_count(); ++i) {
        if (dist[i] < R - eps) {
            cov.nodes.push_back(i);
            cov.demand += net.nodes()[i].weight;
        }
    }
    return cov;
}

Coverage uncovered_after(const Network& net, const FacilitySet& x, const Downgrade& gamma,
                         double R, double eps) {
    auto before = shortest_distances(net, zero_downgrade(net), x);
    auto after = shortest_distances(net, gamma, x);
    Coverage lost;
    for (int i = 0; i < net.node_count(); ++i) {
        if (before[i] < R - eps && !(after[i] < R - eps)) {
            lost.nodes.push_back(i);
            lost.demand += net.nodes()[i].weight;
        }
    }
    return lost;
}

} // namespace dmclp
