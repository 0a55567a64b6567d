#include "stretchpack/audit.hpp"

#include <algorithm>

namespace stretchpack {

namespace {

std::string id_list(const std::vector<int>& ids) {
    std::string s;
    for (int id : ids) {
        if (!s.empty()) s += ",";
        s += std::to_string(id);
    }
    return s;
}

}  // namespace

std::vector<Violation> check_phase1_state(const PackerState& state) {
    std::vector<Violation> out;
    std::vector<int> huge_bins, regular_bins, tiny_bins, large_bins, medium_bins;
    std::vector<int> low_regular;  // regular bins with load <= 4

    for (const BinState& b : state.bins) {
        auto t = try_classify_bin(b);
        if (!t) {
            out.push_back({"(i)", {b.id},
                           "bin matches no Definition-2 type (load " + b.load.str() + ")"});
            continue;
        }
        switch (*t) {
            case BinType::G:
                if (bin_value(b) < 0) {
                    out.push_back({"(ii)", {b.id}, "complete bin with value " +
                                                       std::to_string(bin_value(b))});
                }
                break;
            case BinType::H: huge_bins.push_back(b.id); break;
            case BinType::L: large_bins.push_back(b.id); break;
            case BinType::M: medium_bins.push_back(b.id); break;
            case BinType::T: tiny_bins.push_back(b.id); break;
            case BinType::R:
                regular_bins.push_back(b.id);
                if (b.load <= 4) low_regular.push_back(b.id);
                break;
            case BinType::E: break;
        }
    }

    if (!huge_bins.empty() && !(regular_bins.empty() && tiny_bins.empty())) {
        std::vector<int> ids = huge_bins;
        ids.insert(ids.end(), regular_bins.begin(), regular_bins.end());
        ids.insert(ids.end(), tiny_bins.begin(), tiny_bins.end());
        out.push_back({"(iii)", ids, "huge-item bin coexists with regular/tiny bins"});
    }
    if (large_bins.size() > 1) {
        out.push_back({"(iv)", large_bins, "more than one large-item bin"});
    }
    if (medium_bins.size() > 1) {
        out.push_back({"(iv)", medium_bins, "more than one medium-item bin"});
    }
    if (tiny_bins.size() > 1) {
        out.push_back({"(v)", tiny_bins, "more than one tiny bin"});
    }
    if (tiny_bins.size() == 1) {
        const BinState& t = state.bins[tiny_bins[0]];
        for (int rid : regular_bins) {
            if (t.load + state.bins[rid].load <= 6) {
                out.push_back({"(v)", {t.id, rid},
                               "s(T)+s(R) = " + (t.load + state.bins[rid].load).str() +
                                   " <= 6"});
            }
        }
    }
    if (low_regular.size() > 1) {
        out.push_back({"(v)", low_regular,
                       "more than one regular bin with load <= 4 (bins " +
                           id_list(low_regular) + ")"});
    }
    return out;
}

std::vector<Violation> check_phase1_termination(const PackerState& state) {
    int e = 0, r = 0;
    for (const BinState& b : state.bins) {
        auto t = try_classify_bin(b);
        if (t == BinType::E) ++e;
        if (t == BinType::R) ++r;
    }
    std::vector<Violation> out;
    if (!(3 * e <= r && r <= 3 * e + 3)) {
        out.push_back({"(vi)", {},
                       "3e <= r <= 3e+3 fails with e = " + std::to_string(e) +
                           ", r = " + std::to_string(r)});
    }
    return out;
}

std::vector<Violation> check_lemma1(const std::vector<Item>& items, const Packing& packing,
                                    int m) {
    std::vector<Violation> out;
    if (!verify_packing(items, m, packing)) {
        out.push_back({"lemma1-cert", {}, "packing fails the recount check"});
        return out;
    }
    // Rebuild bins to evaluate w and v; empty bins count at -13 / -3.
    std::vector<BinState> bins(m);
    for (int b = 0; b < m; ++b) bins[b].id = b;
    for (std::size_t i = 0; i < items.size(); ++i) bins[packing.assignment[i]].add(items[i]);
    Rat total_w(0);
    int total_v = 0;
    for (const BinState& b : bins) {
        total_w += bin_weight(b);
        total_v += bin_value(b);
    }
    if (total_w > 0) {
        out.push_back({"lemma1-w", {}, "sum of weights = " + total_w.str() + " > 0"});
    }
    if (total_v > 0) {
        out.push_back({"lemma1-v", {}, "sum of values = " + std::to_string(total_v) + " > 0"});
    }
    return out;
}

RunReport check_run(const RunResult& result, const Instance& instance,
                    const OracleConfig& cfg) {
    RunReport report;
    for (const Placement& p : result.placements) {
        if (p.bin_id < 0 || p.bin_id >= instance.m) {
            report.violations.push_back(
                {"run-bins", {p.bin_id}, "placement outside the m bins"});
        }
    }
    for (std::size_t b = 0; b < result.final_loads.size(); ++b) {
        if (result.final_loads[b] > kAlgoCapacity) {
            report.violations.push_back({"run-capacity", {static_cast<int>(b)},
                                         "final load " + result.final_loads[b].str() + " > 18"});
        }
    }
    bool witnessed = instance.witness &&
                     verify_packing(instance.items, instance.m, *instance.witness);
    if (witnessed && result.failed_at) {
        report.violations.push_back({"run-failure", {},
                                     "algorithm failed on item " +
                                         std::to_string(*result.failed_at) +
                                         " of a witnessed-valid instance"});
    }

    if (!instance.items.empty() &&
        instance.items.size() <= static_cast<std::size_t>(cfg.max_items)) {
        std::vector<Rat> sizes;
        for (const Item& it : instance.items) sizes.push_back(it.size);
        Rat opt = min_capacity(sizes, instance.m, cfg);
        if (!opt.is_zero()) {
            report.ratio_available = true;
            report.min_cap = opt;
            report.ratio = result.max_load / opt;
        }
    }
    return report;
}

AuditedRun audited_run(const Instance& instance, Algorithm algorithm) {
    AuditedRun out;
    int last_item = -1;
    RunHooks hooks;
    if (algorithm == Algorithm::Stretch15) {
        hooks.on_place = [&](const PackerState& s, const Placement& p) {
            last_item = p.item_index;
            if (s.phase != Phase::One) return;
            for (Violation& v : check_phase1_state(s)) {
                out.violations.push_back({p.item_index, std::move(v)});
            }
        };
        hooks.on_transition = [&](const PackerState& s) {
            for (Violation& v : check_phase1_termination(s)) {
                out.violations.push_back({last_item, std::move(v)});
            }
        };
    }
    out.result = run(instance, algorithm, hooks);
    return out;
}

}  // namespace stretchpack
