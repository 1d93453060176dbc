#include "dmclp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "dmclp/errors.hpp"
#include "dmclp/rng.hpp"

namespace dmclp {

double round2(double v) {
    return std::round(v * 100.0) / 100.0;
}

int p_from_mode(int n, PMode mode) {
    int div = mode == PMode::Over30 ? 30 : mode == PMode::Over20 ? 20 : 10;
    return std::max(1, n / div);
}

int radius_k(int n, RadiusMode mode) {
    switch (mode) {
        case RadiusMode::Cover1: return 1;
        case RadiusMode::Cover5Pct: return static_cast<int>(std::ceil(0.05 * n));
        default: return static_cast<int>(std::ceil(0.10 * n));
    }
}

double budget_from(double b_max, double b_per, int p, int n) {
    return round2(b_max * b_per * (static_cast<double>(p) * (p - 1)) /
                  (static_cast<double>(n) * (n - 1)));
}

PMode parse_p_mode(const std::string& s) {
    if (s == "n/30") return PMode::Over30;
    if (s == "n/20") return PMode::Over20;
    if (s == "n/10") return PMode::Over10;
    throw InputError("unknown p mode '" + s + "' (expected n/30, n/20 or n/10)");
}

RadiusMode parse_radius_mode(const std::string& s) {
    if (s == "1") return RadiusMode::Cover1;
    if (s == "5pct") return RadiusMode::Cover5Pct;
    if (s == "10pct") return RadiusMode::Cover10Pct;
    throw InputError("unknown radius mode '" + s + "' (expected 1, 5pct or 10pct)");
}

std::string to_string(PMode mode) {
    return mode == PMode::Over30 ? "n/30" : mode == PMode::Over20 ? "n/20" : "n/10";
}

std::string to_string(RadiusMode mode) {
    return mode == RadiusMode::Cover1 ? "1"
           : mode == RadiusMode::Cover5Pct ? "5pct"
                                           : "10pct";
}

Instance generate(const GenConfig& cfg) {
    if (cfg.n < 2) throw InputError("generate: n must be at least 2");
    if (!(cfg.b_per >= 0)) throw InputError("generate: b_per must be nonnegative");
    Rng rng(cfg.seed);

    std::vector<Node> nodes(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        nodes[i].has_xy = true;
        nodes[i].x = round2(uniform_real(rng, 0.0, 30.0));
        nodes[i].y = round2(uniform_real(rng, 0.0, 30.0));
    }
    for (int i = 0; i < cfg.n; ++i)
        nodes[i].weight = uniform_int(rng, 1, 100);

    // Complete graph, edges in lexicographic (i, j) order.
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(cfg.n) * (cfg.n - 1) / 2);
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j) {
            Edge e;
            e.a = i;
            e.b = j;
            double len = round2(std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y));
            // Points may coincide after rounding; keep lengths positive.
            e.len = std::max(len, 0.01);
            edges.push_back(e);
        }
    }
    for (auto& e : edges) e.cost = round2(uniform_real(rng, 1.0, 3.0));
    for (auto& e : edges) e.ub = round2(uniform_real(rng, 0.5 * e.len, 1.5 * e.len));

    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = p_from_mode(cfg.n, cfg.p_mode);

    // R: the k-th nearest other node must be coverable from every node.
    const int k = std::min(radius_k(cfg.n, cfg.radius_mode), cfg.n - 1);
    double worst = 0.0;
    for (int i = 0; i < cfg.n; ++i) {
        auto dist = shortest_distances(inst.network, zero_downgrade(inst.network), {i});
        dist.erase(dist.begin() + i);
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        worst = std::max(worst, dist[k - 1]);
    }
    inst.R = round2(worst + 0.01);

    double b_max = 0.0;
    for (const auto& e : inst.network.edges()) b_max += e.ub * e.cost;
    inst.B = budget_from(b_max, cfg.b_per, inst.p, cfg.n);

    validate_instance(inst);
    return inst;
}

namespace {

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-empty data line, split into tokens; false at EOF.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            tokens.clear();
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }
};

long long parse_int(const std::string& tok, const LineReader& r, const char* what) {
    size_t pos = 0;
    long long v;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", r.line_no);
    }
    if (pos != tok.size())
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", r.line_no);
    return v;
}

double parse_num(const std::string& tok, const LineReader& r, const char* what) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", r.line_no);
    }
    if (pos != tok.size() || !std::isfinite(v))
        throw ParseError(std::string("bad ") + what + " '" + tok + "'", r.line_no);
    return v;
}

} // namespace

Instance read_instance(std::istream& in) {
    LineReader reader{in};
    std::vector<std::string> t;

    if (!reader.next(t)) throw ParseError("missing header line", reader.line_no);
    if (t.size() != 5) throw ParseError("header must be 'n m p R B'", reader.line_no);
    const int n = static_cast<int>(parse_int(t[0], reader, "node count"));
    const int m = static_cast<int>(parse_int(t[1], reader, "edge count"));
    const int p = static_cast<int>(parse_int(t[2], reader, "p"));
    const double R = round2(parse_num(t[3], reader, "R"));
    const double B = round2(parse_num(t[4], reader, "B"));
    if (n < 1) throw ParseError("node count must be positive", reader.line_no);
    if (m < 0) throw ParseError("edge count must be nonnegative", reader.line_no);

    std::vector<Node> nodes(n);
    bool any_xy = false;
    for (int i = 0; i < n; ++i) {
        if (!reader.next(t)) throw ParseError("unexpected end of file in node list", reader.line_no);
        if (t.size() != 2 && t.size() != 4)
            throw ParseError("node line must be 'id w' or 'id w x y'", reader.line_no);
        const int id = static_cast<int>(parse_int(t[0], reader, "node id"));
        if (id != i)
            throw ParseError("node ids must be 0.." + std::to_string(n - 1) + " in order",
                             reader.line_no);
        nodes[i].weight = parse_int(t[1], reader, "weight");
        if (nodes[i].weight < 0) throw ParseError("negative weight", reader.line_no);
        if (t.size() == 4) {
            nodes[i].has_xy = true;
            nodes[i].x = round2(parse_num(t[2], reader, "x"));
            nodes[i].y = round2(parse_num(t[3], reader, "y"));
            any_xy = true;
        } else if (any_xy) {
            throw ParseError("all node lines must carry coordinates if any does", reader.line_no);
        }
    }

    std::vector<Edge> edges(m);
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < m; ++e) {
        if (!reader.next(t)) throw ParseError("unexpected end of file in edge list", reader.line_no);
        if (t.size() != 5) throw ParseError("edge line must be 'i j len u cost'", reader.line_no);
        edges[e].a = static_cast<int>(parse_int(t[0], reader, "edge endpoint"));
        edges[e].b = static_cast<int>(parse_int(t[1], reader, "edge endpoint"));
        if (edges[e].a < 0 || edges[e].a >= n || edges[e].b < 0 || edges[e].b >= n)
            throw ParseError("edge endpoint out of range", reader.line_no);
        if (edges[e].a == edges[e].b) throw ParseError("self loop", reader.line_no);
        if (!seen.insert(std::minmax(edges[e].a, edges[e].b)).second)
            throw ParseError("duplicate edge", reader.line_no);
        edges[e].len = round2(parse_num(t[2], reader, "length"));
        edges[e].ub = round2(parse_num(t[3], reader, "downgrade bound"));
        edges[e].cost = round2(parse_num(t[4], reader, "cost"));
        if (edges[e].len <= 0) throw ParseError("length must be positive", reader.line_no);
        if (edges[e].ub < 0) throw ParseError("negative downgrade bound", reader.line_no);
        if (edges[e].cost <= 0) throw ParseError("cost must be positive", reader.line_no);
    }
    if (reader.next(t)) throw ParseError("trailing data after edge list", reader.line_no);

    Instance inst;
    inst.network = Network(std::move(nodes), std::move(edges));
    inst.p = p;
    inst.R = R;
    inst.B = B;
    validate_instance(inst);
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file '" + path + "'");
    return read_instance(in);
}

void write_instance(const Instance& inst, std::ostream& out) {
    const Network& net = inst.network;
    out << net.node_count() << ' ' << net.edge_count() << ' ' << inst.p << ' ' << fmt2(inst.R)
        << ' ' << fmt2(inst.B) << '\n';
    for (int i = 0; i < net.node_count(); ++i) {
        const Node& nd = net.nodes()[i];
        out << i << ' ' << nd.weight;
        if (nd.has_xy) out << ' ' << fmt2(nd.x) << ' ' << fmt2(nd.y);
        out << '\n';
    }
    for (const auto& e : net.edges())
        out << e.a << ' ' << e.b << ' ' << fmt2(e.len) << ' ' << fmt2(e.ub) << ' ' << fmt2(e.cost)
            << '\n';
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file '" + path + "'");
    write_instance(inst, out);
    if (!out.good()) throw InputError("failed writing '" + path + "'");
}

} // namespace dmclp
