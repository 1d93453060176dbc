#include "dmclp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "dmclp/errors.hpp"
#include "dmclp/metrics.hpp"
#include "dmclp/oracles.hpp"
#include "dmclp/preprocess.hpp"
#include "dmclp/solver.hpp"

namespace dmclp {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

long long parse_ll(const std::string& tok, const char* what, int line) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + ": '" + tok + "'", line);
    }
}

double parse_d(const std::string& tok, const char* what, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + ": '" + tok + "'", line);
    }
}

const char* short_p(PMode m) {
    switch (m) {
    case PMode::Over30: return "n30";
    case PMode::Over20: return "n20";
    case PMode::Over10: return "n10";
    }
    return "?";
}

const char* short_r(RadiusMode m) {
    switch (m) {
    case RadiusMode::Cover1: return "1";
    case RadiusMode::Cover5Pct: return "5";
    case RadiusMode::Cover10Pct: return "10";
    }
    return "?";
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

MethodSpec parse_method(const std::string& name) {
    MethodSpec m;
    m.name = name;
    if (name == "exact") {
        m.exact = true;
        return m;
    }
    if (name == "optimal-out-in-1") {
        m.ls = LsVariant::OptimalOutIn;
        m.ls_iters = 1;
        return m;
    }
    if (name == "optimal-out-in-10" || name == "optimal-out-in") {
        m.ls = LsVariant::OptimalOutIn;
        m.ls_iters = 10;
        return m;
    }
    m.ls = parse_ls_variant(name); // none or a fixed-out family
    return m;
}

SweepConfig parse_sweep(std::istream& in) {
    SweepConfig cfg;
    bool saw_n = false, saw_methods = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
        const std::string key = trim(line.substr(0, eq));
        std::vector<std::string> vals;
        for (const std::string& tok : split(line.substr(eq + 1), ',')) {
            const std::string t = trim(tok);
            if (t.empty()) throw ParseError("empty value for " + key, lineno);
            vals.push_back(t);
        }
        if (vals.empty()) throw ParseError("no value for " + key, lineno);

        if (key == "n") {
            cfg.ns.clear();
            for (const auto& t : vals) {
                const long long v = parse_ll(t, "n", lineno);
                if (v < 1) throw ParseError("n must be positive", lineno);
                cfg.ns.push_back(static_cast<int>(v));
            }
            saw_n = true;
        } else if (key == "p_mode") {
            cfg.p_modes.clear();
            for (const auto& t : vals) {
                try {
                    cfg.p_modes.push_back(parse_p_mode(t));
                } catch (const InputError& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
        } else if (key == "radius_mode") {
            cfg.radius_modes.clear();
            for (const auto& t : vals) {
                try {
                    cfg.radius_modes.push_back(parse_radius_mode(t));
                } catch (const InputError& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
        } else if (key == "b_per") {
            cfg.b_pers.clear();
            for (const auto& t : vals) {
                const double v = parse_d(t, "b_per", lineno);
                if (v < 0) throw ParseError("b_per must be nonnegative", lineno);
                cfg.b_pers.push_back(v);
            }
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& t : vals) {
                const auto dash = t.find('-');
                if (dash == std::string::npos) {
                    cfg.seeds.push_back(
                        static_cast<std::uint64_t>(parse_ll(t, "seed", lineno)));
                } else {
                    const long long a = parse_ll(t.substr(0, dash), "seed range", lineno);
                    const long long b = parse_ll(t.substr(dash + 1), "seed range", lineno);
                    if (a < 0 || b < a) throw ParseError("bad seed range '" + t + "'", lineno);
                    for (long long s = a; s <= b; ++s)
                        cfg.seeds.push_back(static_cast<std::uint64_t>(s));
                }
            }
        } else if (key == "methods") {
            cfg.methods.clear();
            for (const auto& t : vals) {
                try {
                    cfg.methods.push_back(parse_method(t));
                } catch (const InputError& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
            saw_methods = true;
        } else if (key == "jobs") {
            const long long v = parse_ll(vals.at(0), "jobs", lineno);
            if (vals.size() != 1 || v < 1) throw ParseError("jobs must be one positive value", lineno);
            cfg.jobs = static_cast<int>(v);
        } else if (key == "attacker_time_limit") {
            const double v = parse_d(vals.at(0), "attacker_time_limit", lineno);
            if (vals.size() != 1 || v <= 0)
                throw ParseError("attacker_time_limit must be one positive value", lineno);
            cfg.attacker_time_limit = v;
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    if (!saw_n || !saw_methods) throw InputError("sweep config needs at least n and methods");
    if (cfg.seeds.empty()) throw InputError("sweep config needs at least one seed");
    return cfg;
}

SweepConfig parse_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sweep config: " + path);
    return parse_sweep(in);
}

namespace {

struct Task {
    int n;
    PMode pm;
    RadiusMode rm;
    double b_per;
    std::uint64_t seed;
};

void run_task(const Task& t, const SweepConfig& cfg, BenchRow* slot) {
    const std::size_t nmethods = cfg.methods.size();
    char name[128];
    std::snprintf(name, sizeof name, "n%d_p%s_r%s_b%g_s%llu", t.n, short_p(t.pm), short_r(t.rm),
                  t.b_per, static_cast<unsigned long long>(t.seed));
    for (std::size_t j = 0; j < nmethods; ++j) {
        BenchRow& row = slot[j];
        row.instance = name;
        row.n = t.n;
        row.p_mode = to_string(t.pm);
        row.radius_mode = to_string(t.rm);
        row.b_per = t.b_per;
        row.seed = t.seed;
        row.method = cfg.methods[j].name;
        row.status = "error";
    }

    Instance inst;
    try {
        inst = preprocess(generate({t.n, t.pm, t.rm, t.b_per, t.seed}));
    } catch (const std::exception&) {
        return; // every row of this instance stays "error"
    }
    for (std::size_t j = 0; j < nmethods; ++j) {
        BenchRow& row = slot[j];
        row.m = inst.network.edge_count();
        row.p = inst.p;
        row.R = inst.R;
        row.B = inst.B;
    }

    AttackerCache cache;
    for (std::size_t j = 0; j < nmethods; ++j) {
        BenchRow& row = slot[j];
        const MethodSpec& method = cfg.methods[j];
        reset_solver_seconds();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            double value;
            if (method.exact) {
                value = solve_exact_enum(inst).best.value;
            } else {
                HeuristicConfig hc;
                hc.ls = method.ls;
                hc.ls_max_iters = method.ls_iters;
                hc.attacker_time_limit = cfg.attacker_time_limit;
                value = run_matheuristic(inst, hc, &cache).value;
            }
            row.value = std::llround(value);
            row.status = "ok";
        } catch (const GuardError&) {
            row.status = "guard";
        } catch (const std::exception&) {
            row.status = "error";
        }
        row.total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.solver_s = solver_seconds();
    }

    // comparison columns: gap to the best value any method achieved here,
    // and the two sequential-planner references for each method's own value
    long long best = 0;
    bool any = false;
    for (std::size_t j = 0; j < nmethods; ++j)
        if (slot[j].value) {
            best = any ? std::max(best, *slot[j].value) : *slot[j].value;
            any = true;
        }
    if (any && best > 0)
        for (std::size_t j = 0; j < nmethods; ++j)
            if (slot[j].value) slot[j].gap_bs_pct = gap_bs(best, *slot[j].value);
    try {
        const BoundsResult b = bounds(inst);
        long long s_xub = 0, s_xlb = 0;
        {
            auto it = cache.exact.find(b.x_ub);
            if (it == cache.exact.end())
                it = cache.exact.emplace(b.x_ub, solve_attacker(inst, b.x_ub)).first;
            s_xub = coverage(inst.network, it->second.gamma, b.x_ub, inst.R).demand;
        }
        {
            auto it = cache.exact.find(b.x_lb);
            if (it == cache.exact.end())
                it = cache.exact.emplace(b.x_lb, solve_attacker(inst, b.x_lb)).first;
            s_xlb = coverage(inst.network, it->second.gamma, b.x_lb, inst.R).demand;
        }
        for (std::size_t j = 0; j < nmethods; ++j) {
            if (!slot[j].value || *slot[j].value <= 0) continue;
            const double v = static_cast<double>(*slot[j].value);
            slot[j].mi_o_pct = (static_cast<double>(s_xub) - v) / v * 100.0;
            slot[j].mi_p_pct = (static_cast<double>(s_xlb) - v) / v * 100.0;
        }
    } catch (const std::exception&) {
        // insight columns stay empty
    }
}

} // namespace

std::vector<BenchRow> run_bench(const SweepConfig& cfg) {
    if (cfg.ns.empty() || cfg.methods.empty())
        throw InputError("sweep config needs at least n and methods");
    std::vector<Task> tasks;
    for (int n : cfg.ns)
        for (PMode pm : cfg.p_modes)
            for (RadiusMode rm : cfg.radius_modes)
                for (double b_per : cfg.b_pers)
                    for (std::uint64_t seed : cfg.seeds) tasks.push_back({n, pm, rm, b_per, seed});

    std::vector<BenchRow> rows(tasks.size() * cfg.methods.size());
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            run_task(tasks[i], cfg, rows.data() + i * cfg.methods.size());
    } else {
        // workers pull task indices; each writes only its task's row slots,
        // so the assembled order is identical to the sequential one
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(tasks[i], cfg, rows.data() + i * cfg.methods.size());
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

namespace {

constexpr const char* kBenchHeader =
    "instance,n,m,p,R,B,p_mode,radius_mode,b_per,seed,method,status,value,total_s,solver_s,"
    "gap_bs_pct,mi_o_pct,mi_p_pct";

} // namespace

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "# dmclp bench v1\n" << kBenchHeader << "\n";
    for (const BenchRow& r : rows) {
        out << r.instance << ',' << r.n << ',' << r.m << ',' << r.p << ',' << fmt("%.2f", r.R)
            << ',' << fmt("%.2f", r.B) << ',' << r.p_mode << ',' << r.radius_mode << ','
            << fmt("%.2f", r.b_per) << ',' << r.seed << ',' << r.method << ',' << r.status << ',';
        if (r.value) out << *r.value;
        out << ',' << fmt("%.3f", r.total_s) << ',' << fmt("%.3f", r.solver_s) << ',';
        if (r.gap_bs_pct) out << fmt("%.2f", *r.gap_bs_pct);
        out << ',';
        if (r.mi_o_pct) out << fmt("%.2f", *r.mi_o_pct);
        out << ',';
        if (r.mi_p_pct) out << fmt("%.2f", *r.mi_p_pct);
        out << '\n';
    }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
    std::vector<BenchRow> rows;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != kBenchHeader) throw ParseError("unexpected bench CSV header", lineno);
            saw_header = true;
            continue;
        }
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 18) throw ParseError("expected 18 columns", lineno);
        BenchRow r;
        r.instance = f[0];
        r.n = static_cast<int>(parse_ll(f[1], "n", lineno));
        r.m = static_cast<int>(parse_ll(f[2], "m", lineno));
        r.p = static_cast<int>(parse_ll(f[3], "p", lineno));
        r.R = parse_d(f[4], "R", lineno);
        r.B = parse_d(f[5], "B", lineno);
        r.p_mode = f[6];
        r.radius_mode = f[7];
        r.b_per = parse_d(f[8], "b_per", lineno);
        r.seed = static_cast<std::uint64_t>(parse_ll(f[9], "seed", lineno));
        r.method = f[10];
        r.status = f[11];
        if (!f[12].empty()) r.value = parse_ll(f[12], "value", lineno);
        r.total_s = parse_d(f[13], "total_s", lineno);
        r.solver_s = parse_d(f[14], "solver_s", lineno);
        if (!f[15].empty()) r.gap_bs_pct = parse_d(f[15], "gap_bs_pct", lineno);
        if (!f[16].empty()) r.mi_o_pct = parse_d(f[16], "mi_o_pct", lineno);
        if (!f[17].empty()) r.mi_p_pct = parse_d(f[17], "mi_p_pct", lineno);
        rows.push_back(std::move(r));
    }
    if (!saw_header) throw InputError("bench CSV has no header");
    return rows;
}

void write_profile_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> times;
    for (const BenchRow& r : rows) {
        if (!times.count(r.method)) order.push_back(r.method);
        if (r.status == "ok") times[r.method].push_back(r.total_s);
        else times[r.method]; // method appears even if it solved nothing
    }
    out << "# dmclp bench profile v1\nmethod,time_s,solved\n";
    for (const std::string& m : order) {
        std::vector<double>& ts = times[m];
        std::sort(ts.begin(), ts.end());
        for (std::size_t k = 0; k < ts.size(); ++k)
            out << m << ',' << fmt("%.3f", ts[k]) << ',' << k + 1 << '\n';
    }
    out.flush();
}

} // namespace dmclp
