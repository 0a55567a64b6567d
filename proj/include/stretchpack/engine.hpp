#ifndef STRETCHPACK_ENGINE_HPP
#define STRETCHPACK_ENGINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stretchpack/model.hpp"

namespace stretchpack {

enum class Phase { One, TwoHuge, TwoRegular };
enum class Algorithm { Stretch15, FirstFit };

const char* branch_name(Phase p);  // "huge" / "regular" for the two phase-2 branches

// One committed placement. `rule` identifies the algorithm line that fired:
// "3".."11" for the first-phase cascade, "ff" for phase-2 (and baseline)
// First Fit, "ff-rev" for reverse First Fit. `phase` is 1 or 2 (0 for the
// First Fit baseline).
struct Placement {
    int item_index = 0;
    int bin_id = 0;
    std::string rule;
    Rat load_after;
    BinType bin_type_after = BinType::E;
    int phase = 1;
};

struct PackerState {
    int m = 1;
    std::vector<BinState> bins;  // fixed length m, bins[i].id == i
    Phase phase = Phase::One;
    int e = 0;  // current number of E bins
    int r = 0;  // current number of R bins
    std::optional<int> l_bin, m_bin, t_bin;
    std::vector<int> phase2_list;  // bin ids, set at the phase transition
    std::optional<int> lambda;     // r - 3e, set at transition into TwoRegular

    const BinState& bin(int id) const { return bins[id]; }
};

struct RunResult {
    std::vector<Placement> placements;
    std::vector<Rat> final_loads;
    Rat max_load;
    std::optional<int> failed_at;
    // Phase-2 transition data, present iff the transition happened.
    std::optional<Phase> branch;
    std::optional<int> lambda;
    std::vector<int> phase2_list;
};

// Hooks for auditing/tracing; invoked while the run is in flight.
struct RunHooks {
    std::function<void(const PackerState&, const Placement&)> on_place;
    std::function<void(const PackerState&)> on_transition;  // state is phase-2, list built
};

PackerState new_packer(int m);

// Stopping condition of the first phase, checked before consuming each item.
bool phase1_should_stop(const PackerState& state);

// The first-phase rule cascade with deterministic tie-breaks. Requires
// phase One and !phase1_should_stop (so an empty bin exists).
Placement phase1_place(PackerState& state, const Item& item);

// Decides the phase-2 branch once phase 1 ended with items remaining.
// Asserts the Lemma-2 consequences (TwoHuge => no R, T or E bins).
Phase select_branch(const PackerState& state);

// Phase-2 list for the huge branch: huge-item bins in creation order, then
// L, then M; complete bins excluded.
std::vector<int> build_huge_list(const PackerState& state);

// Phase-2 list for the regular branch: specials L, M, T, then blocks of
// regular bins (R_first moved to the front) interleaved with empty bins.
std::vector<int> build_blocks(const PackerState& state);

// Installs the phase-2 branch on the state: freezes types, builds the list.
void start_phase2(PackerState& state);

// First Fit at capacity 18 over the phase-2 list (reversed for huge items in
// the regular branch). nullopt when no listed bin fits.
std::optional<Placement> phase2_place(PackerState& state, const Item& item);

// Feeds all items through the chosen packer.
RunResult run(const Instance& instance, Algorithm algorithm, const RunHooks& hooks = {});

// Incremental form of the same packers: one item per push, deterministic,
// freely copyable mid-stream. Used by the adversary search and replay tests.
class OnlinePacker {
public:
    OnlinePacker(int m, Algorithm algorithm, RunHooks hooks = {});

    // Consumes the next item; nullopt when the algorithm cannot place it
    // within capacity 18 (the packer is then failed and accepts no more).
    std::optional<Placement> push(const Rat& size);

    const PackerState& state() const { return state_; }
    Algorithm algorithm() const { return alg_; }
    bool failed() const { return failed_; }
    int items_seen() const { return count_; }
    Rat max_load() const;

    // Least load any bin would reach if the packer were forced to take an
    // item of this size anyway.
    Rat min_forced_load(const Rat& size) const;

private:
    PackerState state_;
    Algorithm alg_;
    RunHooks hooks_;
    int count_ = 0;
    bool failed_ = false;
};

}  // namespace stretchpack

#endif
