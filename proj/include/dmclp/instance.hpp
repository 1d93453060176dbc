#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dmclp/graph.hpp"

namespace dmclp {

enum class PMode { Over30, Over20, Over10 };
enum class RadiusMode { Cover1, Cover5Pct, Cover10Pct };

struct GenConfig {
    int n = 0;
    PMode p_mode = PMode::Over10;
    RadiusMode radius_mode = RadiusMode::Cover1;
    double b_per = 0.1;       // fraction of the saturation budget, before the p/n scaling
    std::uint64_t seed = 0;
};

// Random complete Euclidean network: n points uniform in [0,30]^2, lengths are
// rounded point distances, integer weights in [1,100], costs uniform in [1,3],
// downgrade caps uniform in (0.5*len, 1.5*len). Sampling order is fixed
// (coordinates, weights, costs, caps) so a seed pins the instance exactly.
// R makes every node able to cover at least k others (k from radius_mode);
// B scales the saturation budget sum(u_e * c_e) by b_per * p(p-1) / (n(n-1)).
Instance generate(const GenConfig& cfg);

// Round half away from zero to 2 decimals. All instance data is quantized to
// 2 decimals at creation and at ingestion.
double round2(double v);

int p_from_mode(int n, PMode mode);
int radius_k(int n, RadiusMode mode);
double budget_from(double b_max, double b_per, int p, int n);

PMode parse_p_mode(const std::string& s);           // "n/30" | "n/20" | "n/10"
RadiusMode parse_radius_mode(const std::string& s); // "1" | "5pct" | "10pct"
std::string to_string(PMode mode);
std::string to_string(RadiusMode mode);

// Text format, '#' starts a comment, ids are 0-based:
//   n m p R B
//   id w [x y]      (n lines)
//   i j len u cost  (m lines)
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);
void write_instance_file(const Instance& inst, const std::string& path);

} // namespace dmclp
