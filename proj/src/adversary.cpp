#include "stretchpack/adversary.hpp"

#include <algorithm>
#include <unordered_map>

#include "stretchpack/oracle.hpp"

namespace stretchpack {

namespace {

struct NodeValue {
    Rat value;
    std::vector<Rat> suffix;
};

// Canonical text key: the prefix size multiset plus everything that steers
// the packer's future decisions. Exact, so transpositions never collide.
std::string state_digest(const std::vector<Rat>& prefix_sorted, const PackerState& s,
                         int remaining) {
    std::string key = std::to_string(remaining) + "|";
    for (const Rat& x : prefix_sorted) {
        key += x.str();
        key += ",";
    }
    key += "|p";
    key += std::to_string(static_cast<int>(s.phase));
    for (const BinState& b : s.bins) {
        bool has_huge = false, all_medium = true;
        for (const Item& it : b.contents) {
            if (it.cls == ItemClass::Huge) has_huge = true;
            if (it.cls != ItemClass::Medium) all_medium = false;
        }
        key += ";";
        key += b.load.str();
        key += type_name(b.type);
        key += std::to_string(b.k);
        key += has_huge ? 'h' : '.';
        key += all_medium ? 'm' : '.';
        key += std::to_string(b.contents.size());
    }
    key += "|l";
    for (int id : s.phase2_list) {
        key += std::to_string(id);
        key += ",";
    }
    return key;
}

struct MultisetHash {
    std::size_t operator()(const std::vector<Rat>& v) const {
        std::size_t h = v.size();
        for (const Rat& r : v) h = h * 0x100000001B3ull ^ r.hash();
        return h;
    }
};

struct Searcher {
    const SearchConfig& cfg;
    std::vector<Rat> menu;
    OracleConfig oracle_cfg;
    std::unordered_map<std::vector<Rat>, bool, MultisetHash> feasible_memo;
    std::unordered_map<std::string, NodeValue> transpositions;
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    bool exhausted = false;

    bool prefix_feasible(const std::vector<Rat>& prefix_sorted) {
        auto it = feasible_memo.find(prefix_sorted);
        if (it != feasible_memo.end()) return it->second;
        bool ok = feasible(prefix_sorted, cfg.m, kOptCapacity, oracle_cfg).has_value();
        feasible_memo.emplace(prefix_sorted, ok);
        return ok;
    }

    NodeValue visit(std::vector<Rat>& prefix_sorted, const OnlinePacker& packer,
                    int remaining) {
        ++nodes;
        NodeValue best{packer.max_load(), {}};  // the adversary may stop here
        if (remaining == 0) return best;
        if (cfg.node_budget != 0 && nodes > cfg.node_budget) {
            exhausted = true;
            return best;
        }

        std::string key = state_digest(prefix_sorted, packer.state(), remaining);
        if (auto it = transpositions.find(key); it != transpositions.end()) {
            return it->second;
        }

        for (const Rat& s : menu) {
            auto at = std::lower_bound(prefix_sorted.begin(), prefix_sorted.end(), s);
            prefix_sorted.insert(at, s);
            if (prefix_feasible(prefix_sorted)) {
                OnlinePacker next = packer;
                auto placed = next.push(s);
                NodeValue child;
                if (!placed) {
                    ++failures;
                    child.value = packer.min_forced_load(s);
                } else {
                    child = visit(prefix_sorted, next, remaining - 1);
                }
                if (child.value > best.value) {
                    best.value = child.value;
                    best.suffix.clear();
                    best.suffix.push_back(s);
                    best.suffix.insert(best.suffix.end(), child.suffix.begin(),
                                       child.suffix.end());
                }
            }
            prefix_sorted.erase(std::lower_bound(prefix_sorted.begin(), prefix_sorted.end(), s));
        }

        transpositions.emplace(std::move(key), best);
        return best;
    }
};

std::vector<Rat> size_menu(const SearchConfig& cfg) {
    std::vector<Rat> menu;
    for (int j = 1; j <= cfg.granularity; ++j) {
        menu.push_back(Rat(12L * j, cfg.granularity));
    }
    return menu;
}

}  // namespace

SearchResult search(const SearchConfig& config) {
    if (config.m < 1) throw std::domain_error("search: m must be positive");
    if (config.granularity < 1) throw std::domain_error("search: granularity must be positive");
    if (config.max_depth < 0) throw std::domain_error("search: negative depth");

    Searcher searcher{config, size_menu(config),
                      OracleConfig{std::max(24, config.max_depth), std::size_t{1} << 20}};
    std::vector<Rat> prefix;
    OnlinePacker packer(config.m, config.packer);
    NodeValue root = searcher.visit(prefix, packer, config.max_depth);

    SearchResult res;
    res.forced_load = root.value;
    res.best_sequence = std::move(root.suffix);
    res.nodes_expanded = searcher.nodes;
    res.budget_exhausted = searcher.exhausted;
    res.packer_failures = searcher.failures;
    return res;
}

Rat replay_sequence(const SearchConfig& config, const std::vector<Rat>& sequence) {
    OnlinePacker packer(config.m, config.packer);
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        Rat before_fail = packer.min_forced_load(sequence[i]);
        if (!packer.push(sequence[i])) {
            if (i + 1 != sequence.size()) {
                throw InvariantError("replay_sequence: packer failed before the last item");
            }
            return before_fail;
        }
    }
    return packer.max_load();
}

}  // namespace stretchpack
