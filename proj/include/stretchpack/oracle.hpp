#ifndef STRETCHPACK_ORACLE_HPP
#define STRETCHPACK_ORACLE_HPP

#include <optional>
#include <vector>

#include "stretchpack/model.hpp"

namespace stretchpack {

// Raised when an input exceeds a configured search budget (oracle item cap,
// subset-sum cap). Maps to exit code 4 in the CLI.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleConfig {
    int max_items = 24;
    std::size_t subset_sum_cap = std::size_t{1} << 20;
};

// Exact feasibility: a packing of the sizes into m bins of the given
// capacity, or nullopt if none exists. Branch and bound over items sorted
// descending with identical-load symmetry breaking and a memo of failed
// states.
std::optional<Packing> feasible(const std::vector<Rat>& sizes, int m, const Rat& capacity,
                                const OracleConfig& cfg = {});

// Least capacity C with feasible(sizes, m, C); C is always a subset sum, so
// this binary-searches the sorted distinct subset sums >= max(total/m, max item).
Rat min_capacity(const std::vector<Rat>& sizes, int m, const OracleConfig& cfg = {});

// True iff the instance packs into m bins of capacity 12. A carried witness
// is re-verified by recount first (any n); otherwise the exact search runs
// and the witness is refreshed on success.
bool validate(Instance& instance, const OracleConfig& cfg = {});

}  // namespace stretchpack

#endif
