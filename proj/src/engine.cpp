#include "stretchpack/engine.hpp"

#include <algorithm>

namespace stretchpack {

const char* branch_name(Phase p) {
    switch (p) {
        case Phase::TwoHuge: return "huge";
        case Phase::TwoRegular: return "regular";
        case Phase::One: return "one";
    }
    return "?";
}

PackerState new_packer(int m) {
    if (m < 1) throw std::domain_error("new_packer: m must be positive");
    PackerState s;
    s.m = m;
    s.bins.resize(m);
    for (int i = 0; i < m; ++i) s.bins[i].id = i;
    s.phase = Phase::One;
    s.e = m;
    s.r = 0;
    return s;
}

bool phase1_should_stop(const PackerState& state) {
    if (state.phase != Phase::One) throw InvariantError("phase1_should_stop: not in phase 1");
    return state.r >= 3 * state.e;
}

namespace {

// Retypes the target bin after a phase-1 placement and keeps the counters
// and special-bin ids coherent.
void retype(PackerState& s, int id) {
    BinState& b = s.bins[id];
    BinType before = b.type;
    BinType after = classify_bin(b);
    b.type = after;
    if (before == after) return;
    if (before == BinType::E) --s.e;
    if (before == BinType::R) --s.r;
    if (after == BinType::R) ++s.r;
    auto drop = [&](std::optional<int>& slot) {
        if (slot && *slot == id) slot.reset();
    };
    drop(s.l_bin);
    drop(s.m_bin);
    drop(s.t_bin);
    if (after == BinType::L) s.l_bin = id;
    if (after == BinType::M) s.m_bin = id;
    if (after == BinType::T) s.t_bin = id;
}

int lowest_empty(const PackerState& s) {
    for (const BinState& b : s.bins) {
        if (b.type == BinType::E) return b.id;
    }
    throw InvariantError("phase1_place: no empty bin while r < 3e");
}

Placement commit_phase1(PackerState& s, const Item& item, int bin, const char* rule) {
    s.bins[bin].add(item);
    retype(s, bin);
    Placement p;
    p.item_index = item.index;
    p.bin_id = bin;
    p.rule = rule;
    p.load_after = s.bins[bin].load;
    p.bin_type_after = s.bins[bin].type;
    p.phase = 1;
    return p;
}

}  // namespace

Placement phase1_place(PackerState& state, const Item& item) {
    if (state.phase != Phase::One) throw InvariantError("phase1_place: not in phase 1");
    if (phase1_should_stop(state)) throw InvariantError("phase1_place: stopping condition holds");

    switch (item.cls) {
        case ItemClass::Regular: {
            // (3) oldest huge-item bin; it always fits (load < 12, item <= 6).
            for (const BinState& b : state.bins) {
                if (b.type == BinType::H) return commit_phase1(state, item, b.id, "3");
            }
            // (4) oldest regular bin staying within size 6.
            for (const BinState& b : state.bins) {
                if (b.type == BinType::R && b.load + item.size <= 6) {
                    return commit_phase1(state, item, b.id, "4");
                }
            }
            // (5) the tiny bin, within size 6.
            if (state.t_bin && state.bins[*state.t_bin].load + item.size <= 6) {
                return commit_phase1(state, item, *state.t_bin, "5");
            }
            break;
        }
        case ItemClass::Medium:
            // (6) the medium-item bin; load < 13 so a medium always fits.
            if (state.m_bin) return commit_phase1(state, item, *state.m_bin, "6");
            break;
        case ItemClass::Large:
            // (7) the large-item bin; 9 + 9 <= 18 so it always fits.
            if (state.l_bin) return commit_phase1(state, item, *state.l_bin, "7");
            break;
        case ItemClass::Huge: {
            // (9) the regular bin with the largest load, ties by lowest id.
            int best = -1;
            for (const BinState& b : state.bins) {
                if (b.type != BinType::R) continue;
                if (best < 0 || b.load > state.bins[best].load) best = b.id;
            }
            if (best >= 0) return commit_phase1(state, item, best, "9");
            // (10) the tiny bin.
            if (state.t_bin) return commit_phase1(state, item, *state.t_bin, "10");
            break;
        }
    }
    // (11) lowest-id empty bin.
    return commit_phase1(state, item, lowest_empty(state), "11");
}

Phase select_branch(const PackerState& state) {
    bool has_h = false;
    for (const BinState& b : state.bins) {
        if (b.type == BinType::H) has_h = true;
    }
    if (has_h) {
        for (const BinState& b : state.bins) {
            if (b.type == BinType::R || b.type == BinType::T || b.type == BinType::E) {
                throw InvariantError("select_branch: huge-item bin coexists with an " +
                                     std::string(type_name(b.type)) + " bin");
            }
        }
        return Phase::TwoHuge;
    }
    return Phase::TwoRegular;
}

std::vector<int> build_huge_list(const PackerState& state) {
    std::vector<int> list;
    for (const BinState& b : state.bins) {
        if (b.type == BinType::H) list.push_back(b.id);
    }
    if (state.l_bin) list.push_back(*state.l_bin);
    if (state.m_bin) list.push_back(*state.m_bin);
    return list;
}

std::vector<int> build_blocks(const PackerState& state) {
    int lambda = state.r - 3 * state.e;
    if (lambda < 0 || lambda > 3) {
        throw InvariantError("build_blocks: lambda = " + std::to_string(lambda) +
                             " outside {0,1,2,3}");
    }

    std::vector<int> list;
    if (state.l_bin) list.push_back(*state.l_bin);
    if (state.m_bin) list.push_back(*state.m_bin);
    if (state.t_bin) list.push_back(*state.t_bin);

    std::vector<int> regular, empty;
    for (const BinState& b : state.bins) {
        if (b.type == BinType::R) regular.push_back(b.id);
        if (b.type == BinType::E) empty.push_back(b.id);
    }
    // R_first: the unique regular bin with load <= 4, moved to the front.
    for (std::size_t i = 0; i < regular.size(); ++i) {
        if (state.bins[regular[i]].load <= 4) {
            std::rotate(regular.begin(), regular.begin() + i, regular.begin() + i + 1);
            break;
        }
    }

    std::size_t next = 0;
    auto take = [&](int count) {
        for (int j = 0; j < count && next < regular.size(); ++j) list.push_back(regular[next++]);
    };
    if (empty.empty()) {
        take(static_cast<int>(regular.size()));  // single all-regular block (or none)
    } else {
        take(lambda);
        list.push_back(empty[0]);
        for (std::size_t i = 1; i < empty.size(); ++i) {
            take(3);
            list.push_back(empty[i]);
        }
        take(3);  // final block, no empty bin
    }
    if (next != regular.size()) {
        throw InvariantError("build_blocks: regular bins left over after block assembly");
    }
    return list;
}

void start_phase2(PackerState& state) {
    if (state.phase != Phase::One) throw InvariantError("start_phase2: already in phase 2");
    Phase branch = select_branch(state);
    if (branch == Phase::TwoHuge) {
        state.phase2_list = build_huge_list(state);
    } else {
        state.lambda = state.r - 3 * state.e;
        state.phase2_list = build_blocks(state);
    }
    state.phase = branch;  // bin types are frozen from here on
}

std::optional<Placement> phase2_place(PackerState& state, const Item& item) {
    if (state.phase == Phase::One) throw InvariantError("phase2_place: still in phase 1");
    bool reversed = state.phase == Phase::TwoRegular && item.cls == ItemClass::Huge;
    const std::vector<int>& list = state.phase2_list;
    auto commit = [&](BinState& b) {
        b.add(item);
        Placement p;
        p.item_index = item.index;
        p.bin_id = b.id;
        p.rule = reversed ? "ff-rev" : "ff";
        p.load_after = b.load;
        p.bin_type_after = b.type;
        p.phase = 2;
        return p;
    };
    auto scan = [&](int idx) { return reversed ? list[list.size() - 1 - idx] : list[idx]; };
    for (std::size_t i = 0; i < list.size(); ++i) {
        BinState& b = state.bins[scan(static_cast<int>(i))];
        if (b.load + item.size <= kAlgoCapacity) return commit(b);
    }
    // A zero-size item always fits in the first listed bin, so reaching here
    // with one means the list is empty (every bin complete). It occupies no
    // volume; park it in the lowest-id bin rather than failing.
    if (item.size.is_zero()) return commit(state.bins[0]);
    return std::nullopt;
}

OnlinePacker::OnlinePacker(int m, Algorithm algorithm, RunHooks hooks)
    : state_(new_packer(m)), alg_(algorithm), hooks_(std::move(hooks)) {}

std::optional<Placement> OnlinePacker::push(const Rat& size) {
    if (failed_) throw InvariantError("OnlinePacker::push after failure");
    Item item(count_, size);
    std::optional<Placement> placed;
    if (alg_ == Algorithm::Stretch15) {
        if (state_.phase == Phase::One && phase1_should_stop(state_)) {
            start_phase2(state_);
            if (hooks_.on_transition) hooks_.on_transition(state_);
        }
        if (state_.phase == Phase::One) {
            placed = phase1_place(state_, item);
        } else {
            placed = phase2_place(state_, item);
        }
    } else {
        for (BinState& b : state_.bins) {
            if (b.load + item.size <= kAlgoCapacity) {
                b.add(item);
                Placement p;
                p.item_index = item.index;
                p.bin_id = b.id;
                p.rule = "ff";
                p.load_after = b.load;
                p.bin_type_after = b.type;  // baseline never classifies
                p.phase = 0;
                placed = p;
                break;
            }
        }
    }
    if (!placed) {
        failed_ = true;
        return std::nullopt;
    }
    ++count_;
    if (hooks_.on_place) hooks_.on_place(state_, *placed);
    return placed;
}

Rat OnlinePacker::max_load() const {
    Rat best(0);
    for (const BinState& b : state_.bins) best = std::max(best, b.load);
    return best;
}

Rat OnlinePacker::min_forced_load(const Rat& size) const {
    Rat best = state_.bins[0].load + size;
    for (const BinState& b : state_.bins) best = std::min(best, b.load + size);
    return best;
}

RunResult run(const Instance& instance, Algorithm algorithm, const RunHooks& hooks) {
    if (instance.m < 1) throw std::domain_error("run: m must be positive");
    OnlinePacker packer(instance.m, algorithm, hooks);
    RunResult res;
    for (const Item& item : instance.items) {
        auto placed = packer.push(item.size);
        if (!placed) {
            res.failed_at = item.index;
            break;
        }
        res.placements.push_back(*placed);
    }
    const PackerState& s = packer.state();
    if (s.phase != Phase::One) {
        res.branch = s.phase;
        res.lambda = s.lambda;
        res.phase2_list = s.phase2_list;
    }
    for (const BinState& b : s.bins) res.final_loads.push_back(b.load);
    res.max_load = *std::max_element(res.final_loads.begin(), res.final_loads.end());
    return res;
}

}  // namespace stretchpack
