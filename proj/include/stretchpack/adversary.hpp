#ifndef STRETCHPACK_ADVERSARY_HPP
#define STRETCHPACK_ADVERSARY_HPP

#include <cstdint>
#include <vector>

#include "stretchpack/engine.hpp"
#include "stretchpack/model.hpp"

namespace stretchpack {

struct SearchConfig {
    int m = 1;
    int granularity = 1;       // allowed sizes {12*j/g : j = 1..g}
    int max_depth = 0;
    Algorithm packer = Algorithm::Stretch15;
    std::uint64_t node_budget = 0;  // 0 = unlimited
};

struct SearchResult {
    Rat forced_load;
    std::vector<Rat> best_sequence;
    std::uint64_t nodes_expanded = 0;
    bool budget_exhausted = false;
    // Feasible items the packer could not place at all. Always 0 against
    // stretch15 unless its stretching guarantee is broken.
    std::uint64_t packer_failures = 0;
};

// Depth-first maximization over adversary moves against the fixed
// deterministic packer. Every candidate prefix is kept packable into m
// capacity-12 bins (oracle-checked, memoized on the size multiset);
// transpositions merge on (prefix multiset, packer state, remaining depth).
// The adversary may always stop, so the value at any node is at least the
// packer's current maximum load. This is the worst case of *this* packer at
// this granularity and depth, not a universal lower bound.
SearchResult search(const SearchConfig& config);

// Feeds the sequence through a fresh packer and returns the load the search
// would score it at: the final maximum bin load, or, if the packer cannot
// place the last item, the least load any bin would reach taking it anyway.
Rat replay_sequence(const SearchConfig& config, const std::vector<Rat>& sequence);

}  // namespace stretchpack

#endif
