#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dmclp/heuristic.hpp"
#include "dmclp/instance.hpp"

namespace dmclp {

// One comparison method: the enumeration-exact solver, or the matheuristic
// configured for a specific local search.
struct MethodSpec {
    std::string name;
    bool exact = false;
    LsVariant ls = LsVariant::None;
    int ls_iters = -1; // <= 0 keeps the variant default
};

// exact | none | fixed-out-in-{a,b} | fixed-out-opt-in-{a,b} |
// optimal-out-in-{1,10}
MethodSpec parse_method(const std::string& name);

struct SweepConfig {
    std::vector<int> ns;
    std::vector<PMode> p_modes = {PMode::Over10};
    std::vector<RadiusMode> radius_modes = {RadiusMode::Cover1};
    std::vector<double> b_pers = {0.1};
    std::vector<std::uint64_t> seeds = {1};
    std::vector<MethodSpec> methods;
    int jobs = 1;
    std::optional<double> attacker_time_limit;
};

// key = value lines, values comma-separated, '#' comments. Keys: n, p_mode,
// radius_mode, b_per, seeds (ranges like 1-5 allowed), methods, jobs,
// attacker_time_limit. n and methods are required.
SweepConfig parse_sweep(std::istream& in);
SweepConfig parse_sweep_file(const std::string& path);

struct BenchRow {
    std::string instance;
    int n = 0, m = 0, p = 0;
    double R = 0.0, B = 0.0;
    std::string p_mode, radius_mode;
    double b_per = 0.0;
    std::uint64_t seed = 0;
    std::string method;
    std::string status; // ok | guard | error
    std::optional<long long> value;
    double total_s = 0.0;
    double solver_s = 0.0;
    std::optional<double> gap_bs_pct; // vs the best ok value on this instance
    std::optional<double> mi_o_pct;
    std::optional<double> mi_p_pct;
};

// Generates each instance of the sweep, preprocesses it, runs every method,
// and fills the comparison columns. Failures are recorded in their row and
// the run continues. Row order is by (instance, method) regardless of jobs.
std::vector<BenchRow> run_bench(const SweepConfig& cfg);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
std::vector<BenchRow> read_bench_csv(std::istream& in);

// Per-method cumulative (time, instances solved) curve over ok rows.
void write_profile_csv(const std::vector<BenchRow>& rows, std::ostream& out);

} // namespace dmclp
