#include "stretchpack/generator.hpp"

#include <algorithm>
#include <numeric>

#include "stretchpack/rng.hpp"

namespace stretchpack {

GenPattern pattern_from_name(const std::string& name) {
    if (name == "packfirst") return GenPattern::PackFirst;
    if (name == "tightness") return GenPattern::Tightness;
    if (name == "mediumflood") return GenPattern::MediumFlood;
    if (name == "largepairs") return GenPattern::LargePairs;
    throw std::invalid_argument("unknown pattern: " + name);
}

const char* pattern_name(GenPattern p) {
    switch (p) {
        case GenPattern::PackFirst: return "packfirst";
        case GenPattern::Tightness: return "tightness";
        case GenPattern::MediumFlood: return "mediumflood";
        case GenPattern::LargePairs: return "largepairs";
    }
    return "?";
}

ArrivalOrder order_from_name(const std::string& name) {
    if (name == "arrival-random" || name == "random") return ArrivalOrder::Random;
    if (name == "asc") return ArrivalOrder::Asc;
    if (name == "desc") return ArrivalOrder::Desc;
    if (name == "as-constructed") return ArrivalOrder::AsConstructed;
    throw std::invalid_argument("unknown order: " + name);
}

const char* order_name(ArrivalOrder o) {
    switch (o) {
        case ArrivalOrder::Random: return "arrival-random";
        case ArrivalOrder::Asc: return "asc";
        case ArrivalOrder::Desc: return "desc";
        case ArrivalOrder::AsConstructed: return "as-constructed";
    }
    return "?";
}

namespace {

Instance with_witness(int m, const std::vector<Rat>& sizes, const std::vector<int>& bin_of) {
    Instance inst(m, std::vector<Rat>(sizes));
    Packing w;
    w.capacity = kOptCapacity;
    w.assignment = bin_of;
    w.bin_loads.assign(m, Rat(0));
    for (std::size_t i = 0; i < sizes.size(); ++i) w.bin_loads[bin_of[i]] += sizes[i];
    inst.witness = std::move(w);
    return inst;
}

Instance gen_packfirst(const GenProfile& p, SplitMix64& rng) {
    // Class boundaries hit exactly now and then, so every comparison in the
    // rule cascade is exercised both strictly and at equality.
    const long snaps[] = {3, 4, 6, 9, 12};

    std::vector<int> count(p.m, 0);
    for (int i = 0; i < p.n; ++i) ++count[rng.below(p.m)];

    std::vector<Rat> sizes;
    std::vector<int> bin_of;
    for (int b = 0; b < p.m; ++b) {
        if (count[b] == 0) continue;
        long fd = 1 + static_cast<long>(rng.below(p.max_den));
        Rat fill(static_cast<long>(rng.below(12 * fd + 1)), fd);
        Rat remaining = fill;
        for (int j = 0; j < count[b]; ++j) {
            Rat piece;
            if (rng.below(4) == 0) {
                Rat snap(static_cast<long>(snaps[rng.below(5)]));
                piece = snap <= remaining ? snap : remaining;
            } else {
                long d = 1 + static_cast<long>(rng.below(p.max_den));
                long max_num = (remaining * Rat(d)).floor_long();
                piece = Rat(static_cast<long>(rng.below(max_num + 1)), d);
            }
            remaining -= piece;
            sizes.push_back(piece);
            bin_of.push_back(b);
        }
    }
    return with_witness(p.m, sizes, bin_of);
}

Instance gen_tightness(int m) {
    std::vector<Rat> sizes{Rat(6), Rat(6)};
    std::vector<int> bin_of{0, 0};
    for (int i = 1; i < m; ++i) {
        sizes.push_back(Rat(12));
        bin_of.push_back(i);
    }
    return with_witness(m, sizes, bin_of);
}

Instance gen_mediumflood(int m) {
    std::vector<Rat> sizes(3 * m, Rat(4));
    std::vector<int> bin_of(3 * m);
    for (int i = 0; i < 3 * m; ++i) bin_of[i] = i / 3;
    return with_witness(m, sizes, bin_of);
}

Instance gen_largepairs(int m) {
    std::vector<Rat> sizes;
    std::vector<int> bin_of;
    for (int b = 0; b < m; ++b) {
        sizes.push_back(Rat(7));
        bin_of.push_back(b);
        sizes.push_back(Rat(5));
        bin_of.push_back(b);
    }
    return with_witness(m, sizes, bin_of);
}

}  // namespace

Instance generate(const GenProfile& profile) {
    if (profile.m < 1) throw std::domain_error("generate: m must be positive");
    if (profile.n < 0) throw std::domain_error("generate: n must be nonnegative");
    if (profile.max_den < 1) throw std::domain_error("generate: max_den must be positive");
    SplitMix64 rng(profile.seed);
    Instance inst;
    switch (profile.pattern) {
        case GenPattern::PackFirst: inst = gen_packfirst(profile, rng); break;
        case GenPattern::Tightness: inst = gen_tightness(profile.m); break;
        case GenPattern::MediumFlood: inst = gen_mediumflood(profile.m); break;
        case GenPattern::LargePairs: inst = gen_largepairs(profile.m); break;
    }
    return permute(inst, profile.order, profile.seed ^ 0xA5A5A5A5A5A5A5A5ull);
}

Instance permute(const Instance& instance, ArrivalOrder order, std::uint64_t seed) {
    std::vector<int> perm(instance.items.size());
    std::iota(perm.begin(), perm.end(), 0);
    switch (order) {
        case ArrivalOrder::AsConstructed:
            break;
        case ArrivalOrder::Asc:
            std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
                return instance.items[a].size < instance.items[b].size;
            });
            break;
        case ArrivalOrder::Desc:
            std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
                return instance.items[a].size > instance.items[b].size;
            });
            break;
        case ArrivalOrder::Random: {
            SplitMix64 rng(seed);
            for (std::size_t i = perm.size(); i > 1; --i) {
                std::swap(perm[i - 1], perm[rng.below(i)]);
            }
            break;
        }
    }

    std::vector<Rat> sizes;
    sizes.reserve(perm.size());
    for (int old : perm) sizes.push_back(instance.items[old].size);
    Instance out(instance.m, std::move(sizes));
    if (instance.witness) {
        Packing w;
        w.capacity = instance.witness->capacity;
        w.bin_loads = instance.witness->bin_loads;
        w.assignment.resize(perm.size());
        for (std::size_t pos = 0; pos < perm.size(); ++pos) {
            w.assignment[pos] = instance.witness->assignment[perm[pos]];
        }
        out.witness = std::move(w);
    }
    return out;
}

}  // namespace stretchpack
