#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmclp/attacker.hpp"
#include "dmclp/bench.hpp"
#include "dmclp/errors.hpp"
#include "dmclp/heuristic.hpp"
#include "dmclp/instance.hpp"
#include "dmclp/metrics.hpp"
#include "dmclp/oracles.hpp"
#include "dmclp/preprocess.hpp"

namespace {

using namespace dmclp;

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            const auto dash = tok.find('-', 1); // allow a leading minus to fail parsing, not split
            if (dash == std::string::npos) {
                std::size_t pos = 0;
                const int v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument("");
                out.push_back(v);
            } else {
                const int a = std::stoi(tok.substr(0, dash));
                const int b = std::stoi(tok.substr(dash + 1));
                if (b < a) throw std::invalid_argument("");
                for (int v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const std::exception&) {
            throw InputError(std::string("bad ") + what + " list: '" + s + "'");
        }
    }
    if (out.empty()) throw InputError(std::string("empty ") + what + " list");
    return out;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ids[i]);
    }
    return s;
}

void print_attack(const Instance& inst, const AttackerResult& res) {
    std::printf("status: %s\n", to_string(res.status));
    std::printf("uncovered demand: %lld\n", res.objective);
    std::printf("best bound: %.6g\n", res.best_bound);
    double spent = 0.0;
    for (std::size_t e = 0; e < res.gamma.size(); ++e)
        spent += res.gamma[e] * inst.network.edges()[e].cost;
    std::printf("budget spent: %.2f of %.2f\n", spent, inst.B);
    std::printf("uncovered nodes: %s\n", join_ids(res.uncovered).c_str());
    for (std::size_t e = 0; e < res.gamma.size(); ++e)
        if (res.gamma[e] > 0.0) {
            const Edge& ed = inst.network.edges()[e];
            std::printf("downgrade %d-%d: +%.4f (cap %.2f)\n", ed.a, ed.b, res.gamma[e], ed.ub);
        }
}

int run(int argc, char** argv) {
    CLI::App app{"Downgrading maximal covering location: generator, attacker, "
                 "heuristics, exact enumeration, benchmark"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Write a random instance");
    int gen_n = 0;
    std::string gen_p = "n/10", gen_r = "1", gen_out;
    double gen_b = 0.1;
    std::uint64_t gen_seed = 0;
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--p-mode", gen_p, "facility count rule: n/30 | n/20 | n/10");
    gen->add_option("--radius-mode", gen_r, "radius rule: 1 | 5pct | 10pct");
    gen->add_option("--b-per", gen_b, "budget fraction");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file")->required();

    auto* prep = app.add_subcommand("preprocess", "Drop useless edges, clip downgrade caps");
    std::string prep_in, prep_out;
    prep->add_option("input", prep_in, "instance file")->required();
    prep->add_option("output", prep_out, "reduced instance file")->required();

    auto* atk = app.add_subcommand("attack", "Optimal downgrade against fixed facilities");
    std::string atk_in, atk_fac;
    std::optional<double> atk_tl;
    atk->add_option("instance", atk_in)->required();
    atk->add_option("--facilities", atk_fac, "facility ids, e.g. 3,7,12")->required();
    atk->add_option("--time-limit", atk_tl, "seconds");

    auto* heu = app.add_subcommand("heuristic", "Alternating search plus local search");
    std::string heu_in, heu_variant = "optimal-out-in-10", heu_strategies = "0-8";
    int heu_ls_iters = -1;
    std::optional<double> heu_tl;
    heu->add_option("instance", heu_in)->required();
    heu->add_option("--variant", heu_variant,
                    "none | fixed-out-in-{a,b} | fixed-out-opt-in-{a,b} | optimal-out-in-{1,10}");
    heu->add_option("--strategies", heu_strategies, "starting strategies, e.g. 0-8 or 0,4,8");
    heu->add_option("--ls-iters", heu_ls_iters, "local search iteration cap");
    heu->add_option("--time-limit", heu_tl, "seconds per candidate attack");

    auto* exa = app.add_subcommand("exact", "Exact solution by facility-set enumeration");
    std::string exa_in;
    exa->add_option("instance", exa_in)->required();

    auto* ben = app.add_subcommand("bench", "Run a sweep and write CSV reports");
    std::string ben_cfg, ben_dir;
    ben->add_option("config", ben_cfg, "sweep config file")->required();
    ben->add_option("--out-dir", ben_dir, "report directory")->required();

    auto* met = app.add_subcommand("metrics", "Bounds and planner-comparison metrics");
    std::string met_in;
    long long met_value = 0;
    met->add_option("instance", met_in)->required();
    met->add_option("--value", met_value, "reference post-attack value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        GenConfig cfg{gen_n, parse_p_mode(gen_p), parse_radius_mode(gen_r), gen_b, gen_seed};
        write_instance_file(generate(cfg), gen_out);
        std::printf("wrote %s\n", gen_out.c_str());
        return 0;
    }
    if (prep->parsed()) {
        PreprocessReport rep;
        const Instance reduced = preprocess(read_instance_file(prep_in), &rep);
        write_instance_file(reduced, prep_out);
        std::printf("edges removed: %d\nbounds tightened: %d\n", rep.edges_removed,
                    rep.bounds_tightened);
        return 0;
    }
    if (atk->parsed()) {
        const Instance inst = read_instance_file(atk_in);
        const FacilitySet x = make_facility_set(parse_int_list(atk_fac, "facility"), inst.network);
        print_attack(inst, solve_attacker(inst, x, atk_tl));
        return 0;
    }
    if (heu->parsed()) {
        const Instance inst = read_instance_file(heu_in);
        const MethodSpec method = parse_method(heu_variant);
        if (method.exact) throw InputError("use the exact subcommand for exact solves");
        HeuristicConfig cfg;
        cfg.strategies = parse_int_list(heu_strategies, "strategy");
        cfg.ls = method.ls;
        cfg.ls_max_iters = heu_ls_iters > 0 ? heu_ls_iters : method.ls_iters;
        cfg.attacker_time_limit = heu_tl;
        const Solution sol = run_matheuristic(inst, cfg);
        std::printf("facilities: %s\n", join_ids(sol.facilities).c_str());
        std::printf("value: %lld\n", static_cast<long long>(sol.value));
        std::printf("strategy: %d\n", sol.trace.strategy);
        std::printf("alternating iterations: %d\n", sol.trace.alt_iterations);
        std::printf("local search moves: %d\n", sol.trace.ls_moves);
        return 0;
    }
    if (exa->parsed()) {
        const Instance inst = read_instance_file(exa_in);
        const ExactResult res = solve_exact_enum(inst);
        std::printf("facilities: %s\n", join_ids(res.best.facilities).c_str());
        std::printf("value: %lld\n", static_cast<long long>(res.best.value));
        return 0;
    }
    if (ben->parsed()) {
        const SweepConfig cfg = parse_sweep_file(ben_cfg);
        const std::vector<BenchRow> rows = run_bench(cfg);
        std::filesystem::create_directories(ben_dir);
        const std::string bench_path = ben_dir + "/bench.csv";
        const std::string profile_path = ben_dir + "/profile.csv";
        std::ofstream bout(bench_path);
        write_bench_csv(rows, bout);
        if (!bout) throw InputError("cannot write " + bench_path);
        std::ofstream pout(profile_path);
        write_profile_csv(rows, pout);
        if (!pout) throw InputError("cannot write " + profile_path);
        std::printf("wrote %s (%zu rows) and %s\n", bench_path.c_str(), rows.size(),
                    profile_path.c_str());
        return 0;
    }
    if (met->parsed()) {
        const Instance inst = read_instance_file(met_in);
        const BoundsResult b = bounds(inst);
        const Insight ins = managerial_insight(inst, met_value);
        std::printf("LB: %lld (facilities: %s)\n", b.lb, join_ids(b.x_lb).c_str());
        std::printf("UB: %lld (facilities: %s)\n", b.ub, join_ids(b.x_ub).c_str());
        std::printf("S_XUB: %lld\nS_XLB: %lld\n", ins.s_xub, ins.s_xlb);
        std::printf("MI_O: %.2f%%\nMI_P: %.2f%%\n", ins.mi_o, ins.mi_p);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GuardError& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return 3;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
