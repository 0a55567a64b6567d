#include "stretchpack/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace stretchpack {

namespace {

struct LoadsHash {
    std::size_t operator()(const std::vector<Rat>& loads) const {
        std::size_t h = loads.size();
        for (const Rat& r : loads) h = h * 0x100000001B3ull ^ r.hash();
        return h;
    }
};

struct Search {
    const std::vector<Rat>& sizes;          // original order
    std::vector<int> order;                 // indices sorted by size descending
    int m;
    Rat capacity;
    std::vector<Rat> loads;                 // by bin index
    std::vector<int> assignment;            // by original item index
    std::unordered_set<std::vector<Rat>, LoadsHash> failed;  // memo key: sorted loads per depth
    std::vector<Rat> key;                   // scratch

    bool place(std::size_t depth) {
        if (depth == order.size()) return true;

        // Memo on the load multiset; the depth is implied by the total.
        key.assign(loads.begin(), loads.end());
        std::sort(key.begin(), key.end());
        if (failed.count(key)) return false;

        const Rat& s = sizes[order[depth]];
        // Identical-load bins are interchangeable: try one bin per distinct load.
        for (int b = 0; b < m; ++b) {
            bool dup = false;
            for (int prev = 0; prev < b; ++prev) {
                if (loads[prev] == loads[b]) { dup = true; break; }
            }
            if (dup) continue;
            if (loads[b] + s > capacity) continue;
            loads[b] += s;
            assignment[order[depth]] = b;
            if (place(depth + 1)) return true;
            loads[b] -= s;
        }

        key.assign(loads.begin(), loads.end());
        std::sort(key.begin(), key.end());
        failed.insert(key);
        return false;
    }
};

}  // namespace

std::optional<Packing> feasible(const std::vector<Rat>& sizes, int m, const Rat& capacity,
                                const OracleConfig& cfg) {
    if (m < 1) throw std::domain_error("feasible: m must be positive");
    for (const Rat& s : sizes) {
        if (s < 0) throw std::domain_error("feasible: negative size");
    }
    if (sizes.size() > static_cast<std::size_t>(cfg.max_items)) {
        throw ResourceLimitError("instance too large for exact oracle (n = " +
                                 std::to_string(sizes.size()) + ", limit " +
                                 std::to_string(cfg.max_items) + ")");
    }

    // Volume bound.
    Rat total = std::accumulate(sizes.begin(), sizes.end(), Rat(0));
    if (total > Rat(m) * capacity) return std::nullopt;
    // Pigeonhole: items larger than capacity/2 cannot share a bin.
    Rat half = capacity / Rat(2);
    int big = 0;
    for (const Rat& s : sizes) {
        if (s > half) ++big;
    }
    if (big > m) return std::nullopt;

    Search search{sizes, {}, m, capacity, {}, {}, {}, {}};
    search.order.resize(sizes.size());
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return sizes[a] > sizes[b]; });
    search.loads.assign(m, Rat(0));
    search.assignment.assign(sizes.size(), -1);
    if (!search.place(0)) return std::nullopt;

    Packing p;
    p.capacity = capacity;
    p.assignment = std::move(search.assignment);
    p.bin_loads = std::move(search.loads);
    return p;
}

Rat min_capacity(const std::vector<Rat>& sizes, int m, const OracleConfig& cfg) {
    if (m < 1) throw std::domain_error("min_capacity: m must be positive");
    if (sizes.size() > static_cast<std::size_t>(cfg.max_items)) {
        throw ResourceLimitError("instance too large for exact oracle (n = " +
                                 std::to_string(sizes.size()) + ", limit " +
                                 std::to_string(cfg.max_items) + ")");
    }

    std::set<Rat> sums{Rat(0)};
    for (const Rat& s : sizes) {
        std::set<Rat> next = sums;
        for (const Rat& x : sums) next.insert(x + s);
        if (next.size() > cfg.subset_sum_cap) {
            throw ResourceLimitError("subset-sum candidate set exceeds cap");
        }
        sums.swap(next);
    }

    Rat total = std::accumulate(sizes.begin(), sizes.end(), Rat(0));
    Rat largest(0);
    for (const Rat& s : sizes) largest = std::max(largest, s);
    Rat lower = std::max(largest, total / Rat(m));

    std::vector<Rat> cand;
    for (const Rat& s : sums) {
        if (s >= lower) cand.push_back(s);
    }
    // cand is sorted; feasibility is monotone in capacity and holds at the
    // total, so the least feasible candidate exists.
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(sizes, m, cand[mid], cfg)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return cand[lo];
}

bool validate(Instance& instance, const OracleConfig& cfg) {
    std::vector<Rat> sizes;
    sizes.reserve(instance.items.size());
    for (const Item& it : instance.items) sizes.push_back(it.size);

    if (instance.witness && instance.witness->capacity == kOptCapacity &&
        verify_packing(instance.items, instance.m, *instance.witness)) {
        return true;
    }
    auto packing = feasible(sizes, instance.m, kOptCapacity, cfg);
    if (!packing) {
        instance.witness.reset();
        return false;
    }
    instance.witness = std::move(*packing);
    return true;
}

}  // namespace stretchpack
