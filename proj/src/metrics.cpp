#include "dmclp/metrics.hpp"

#include "dmclp/errors.hpp"
#include "dmclp/mclp.hpp"

namespace dmclp {

BoundsResult bounds(const Instance& inst) {
    const MclpResult lb = solve_mclp(inst.network, full_downgrade(inst.network), inst.p, inst.R);
    const MclpResult ub = solve_mclp(inst.network, zero_downgrade(inst.network), inst.p, inst.R);
    return {lb.covered_demand, ub.covered_demand, lb.facilities, ub.facilities};
}

double gap_bs(long long bs_t, long long bs_h) {
    if (bs_t <= 0) throw InputError("gap is undefined for a nonpositive exact value");
    return static_cast<double>(bs_t - bs_h) / static_cast<double>(bs_t) * 100.0;
}

namespace {

long long post_attack_value(const Instance& inst, const FacilitySet& x, AttackerCache* cache) {
    AttackerResult local;
    const AttackerResult* att;
    if (cache) {
        auto it = cache->exact.find(x);
        if (it == cache->exact.end()) it = cache->exact.emplace(x, solve_attacker(inst, x)).first;
        att = &it->second;
    } else {
        local = solve_attacker(inst, x);
        att = &local;
    }
    return coverage(inst.network, att->gamma, x, inst.R).demand;
}

} // namespace

Insight managerial_insight(const Instance& inst, long long bs_h, AttackerCache* cache) {
    if (bs_h <= 0) throw InputError("managerial insight needs a positive reference value");
    const BoundsResult b = bounds(inst);
    Insight ins;
    ins.s_xub = post_attack_value(inst, b.x_ub, cache);
    ins.s_xlb = post_attack_value(inst, b.x_lb, cache);
    ins.mi_o = static_cast<double>(ins.s_xub - bs_h) / static_cast<double>(bs_h) * 100.0;
    ins.mi_p = static_cast<double>(ins.s_xlb - bs_h) / static_cast<double>(bs_h) * 100.0;
    return ins;
}

} // namespace dmclp
