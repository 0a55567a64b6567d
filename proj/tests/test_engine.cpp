#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stretchpack/audit.hpp"
#include "stretchpack/engine.hpp"
#include "stretchpack/generator.hpp"
#include "stretchpack/rng.hpp"

using namespace stretchpack;

namespace {

// Hand-built first-phase state: bins filled as given, types and counters
// recomputed the way the engine maintains them.
PackerState synth(int m, const std::vector<std::vector<Rat>>& contents) {
    PackerState s = new_packer(m);
    int idx = 0;
    for (std::size_t b = 0; b < contents.size(); ++b) {
        for (const Rat& sz : contents[b]) s.bins[b].add(Item(idx++, sz));
    }
    s.e = 0;
    s.r = 0;
    for (BinState& bin : s.bins) {
        bin.type = classify_bin(bin);
        if (bin.type == BinType::E) ++s.e;
        if (bin.type == BinType::R) ++s.r;
        if (bin.type == BinType::L) s.l_bin = bin.id;
        if (bin.type == BinType::M) s.m_bin = bin.id;
        if (bin.type == BinType::T) s.t_bin = bin.id;
    }
    return s;
}

bool placements_equal(const Placement& a, const Placement& b) {
    return a.item_index == b.item_index && a.bin_id == b.bin_id && a.rule == b.rule &&
           a.load_after == b.load_after && a.bin_type_after == b.bin_type_after &&
           a.phase == b.phase;
}

}  // namespace

TEST_CASE("new_packer starts with m empty bins") {
    PackerState s = new_packer(3);
    CHECK(s.bins.size() == 3);
    CHECK(s.e == 3);
    CHECK(s.r == 0);
    CHECK(s.phase == Phase::One);
    for (const BinState& b : s.bins) CHECK(b.type == BinType::E);

    CHECK(new_packer(1).bins.size() == 1);
    CHECK_THROWS_AS(new_packer(0), std::domain_error);
}

TEST_CASE("phase1_should_stop is r >= 3e") {
    PackerState s = new_packer(4);
    s.e = 1;
    s.r = 3;
    CHECK(phase1_should_stop(s));
    s.e = 2;
    s.r = 5;
    CHECK(!phase1_should_stop(s));
    s.e = 0;
    s.r = 0;
    CHECK(phase1_should_stop(s));
}

TEST_CASE("regular items avoid joining a regular bin past size 6") {
    PackerState s = new_packer(3);
    Placement p0 = phase1_place(s, Item(0, Rat(6)));
    CHECK(p0.bin_id == 0);
    CHECK(p0.rule == "11");
    CHECK(p0.bin_type_after == BinType::R);
    Placement p1 = phase1_place(s, Item(1, Rat(6)));
    CHECK(p1.bin_id == 1);  // 6+6 > 6 blocks rule (4)
    CHECK(p1.rule == "11");
    CHECK(s.r == 2);
    CHECK(s.e == 1);
}

TEST_CASE("huge item completes the fullest regular bin") {
    PackerState s = new_packer(3);
    phase1_place(s, Item(0, Rat(5)));
    phase1_place(s, Item(1, Rat(6)));
    Placement p = phase1_place(s, Item(2, Rat(12)));
    CHECK(p.rule == "9");
    CHECK(p.bin_id == 1);  // largest load
    CHECK(p.load_after == Rat(18));
    CHECK(p.bin_type_after == BinType::G);
}

TEST_CASE("medium item with no medium bin opens an empty bin") {
    PackerState s = new_packer(2);
    Placement p = phase1_place(s, Item(0, Rat(7, 2)));
    CHECK(p.rule == "11");
    CHECK(p.bin_type_after == BinType::M);
    // the second medium joins it
    Placement p2 = phase1_place(s, Item(1, Rat(4)));
    CHECK(p2.rule == "6");
    CHECK(p2.bin_id == p.bin_id);
    CHECK(p2.bin_type_after == BinType::M);  // load 7.5 < 13
}

TEST_CASE("large items pair up") {
    PackerState s = new_packer(2);
    Placement p = phase1_place(s, Item(0, Rat(7)));
    CHECK(p.bin_type_after == BinType::L);
    Placement p2 = phase1_place(s, Item(1, Rat(9)));
    CHECK(p2.rule == "7");
    CHECK(p2.bin_id == p.bin_id);
    CHECK(p2.load_after == Rat(16));
    CHECK(p2.bin_type_after == BinType::G);
}

TEST_CASE("regular items prefer the huge-item bin") {
    PackerState s = new_packer(2);
    phase1_place(s, Item(0, Rat(10)));
    CHECK(s.bins[0].type == BinType::H);
    Placement p = phase1_place(s, Item(1, Rat(1)));
    CHECK(p.rule == "3");
    CHECK(p.bin_id == 0);
    CHECK(p.bin_type_after == BinType::H);  // load 11 < 12
    Placement p2 = phase1_place(s, Item(2, Rat(2)));
    CHECK(p2.rule == "3");
    CHECK(p2.bin_type_after == BinType::G);  // 13 >= 12, w = 13+1-13 >= 0
}

TEST_CASE("tiny bin accepts regular items within size 6") {
    PackerState s = new_packer(2);
    phase1_place(s, Item(0, Rat(2)));
    CHECK(s.bins[0].type == BinType::T);
    Placement p = phase1_place(s, Item(1, Rat(3)));
    CHECK(p.rule == "5");  // no regular bin exists, tiny fits
    CHECK(p.bin_type_after == BinType::R);  // load 5
}

TEST_CASE("select_branch follows the huge-bin rule and asserts coexistence") {
    PackerState huge = synth(3, {{Rat(10)}, {Rat(10), Rat(5)}, {Rat(7)}});
    CHECK(select_branch(huge) == Phase::TwoHuge);

    PackerState regular = synth(4, {{Rat(5)}, {Rat(5)}, {Rat(5)}, {}});
    CHECK(select_branch(regular) == Phase::TwoRegular);

    PackerState broken = synth(2, {{Rat(10)}, {Rat(5)}});  // H next to R
    CHECK_THROWS_AS(select_branch(broken), InvariantError);
}

TEST_CASE("build_huge_list keeps creation order then L, M") {
    PackerState s =
        synth(5, {{Rat(10)}, {Rat(11)}, {Rat(7)}, {Rat(4)}, {Rat(10), Rat(5)}});
    // bins: H, H, L, M, G
    CHECK(build_huge_list(s) == std::vector<int>{0, 1, 2, 3});

    PackerState one = synth(1, {{Rat(10)}});
    CHECK(build_huge_list(one) == std::vector<int>{0});

    PackerState hm = synth(2, {{Rat(10)}, {Rat(4)}});
    CHECK(build_huge_list(hm) == std::vector<int>{0, 1});
}

TEST_CASE("build_blocks lays out specials, R_first and blocks") {
    // e=2, r=7, lambda=1; R_first is the load-3.5 bin (id 2)
    PackerState s = synth(9, {{Rat(5)},
                              {Rat(5)},
                              {Rat(2), Rat(3, 2)},
                              {Rat(5)},
                              {Rat(5)},
                              {Rat(5)},
                              {Rat(5)},
                              {},
                              {}});
    CHECK(s.e == 2);
    CHECK(s.r == 7);
    CHECK(build_blocks(s) == std::vector<int>{2, 7, 0, 1, 3, 8, 4, 5, 6});

    // e=1, r=3, lambda=0: block 1 is just E1
    PackerState z = synth(4, {{Rat(5)}, {Rat(5)}, {Rat(5)}, {}});
    CHECK(build_blocks(z) == std::vector<int>{3, 0, 1, 2});

    // e=0, r=2: a single all-regular block
    PackerState flat = synth(2, {{Rat(5)}, {Rat(5)}});
    CHECK(build_blocks(flat) == std::vector<int>{0, 1});

    // specials go first, in L, M, T order
    PackerState sp = synth(6, {{Rat(4)}, {Rat(7)}, {Rat(3)}, {Rat(6)}, {Rat(6)}, {Rat(6)}});
    // bins: M, L, T, R, R, R with e=0, r=3
    CHECK(build_blocks(sp) == std::vector<int>{1, 0, 2, 3, 4, 5});

    // lambda outside {0..3} is an engine bug
    PackerState wrong = synth(5, {{Rat(5)}, {Rat(5)}, {Rat(5)}, {Rat(5)}, {}});
    wrong.r = 8;  // forged counter
    CHECK_THROWS_AS(build_blocks(wrong), InvariantError);
}

TEST_CASE("phase-2 First Fit scans forward, reverse for huge items") {
    PackerState s = synth(3, {{Rat(6), Rat(6), Rat(5)}, {Rat(5)}, {Rat(4), Rat(0)}});
    s.phase = Phase::TwoRegular;
    s.phase2_list = {0, 1, 2};

    auto p = phase2_place(s, Item(10, Rat(7)));
    REQUIRE(p.has_value());
    CHECK(p->bin_id == 1);  // 17+7 > 18, 5+7 fits
    CHECK(p->rule == "ff");
    CHECK(p->load_after == Rat(12));

    PackerState rev = synth(2, {{Rat(5)}, {Rat(4), Rat(0)}});
    rev.phase = Phase::TwoRegular;
    rev.phase2_list = {0, 1};
    auto q = phase2_place(rev, Item(10, Rat(10)));
    REQUIRE(q.has_value());
    CHECK(q->bin_id == 1);  // reverse scan hits the last bin first
    CHECK(q->rule == "ff-rev");
    CHECK(q->load_after == Rat(14));

    PackerState hb = synth(2, {{Rat(10)}, {Rat(7)}});
    hb.phase = Phase::TwoHuge;
    hb.phase2_list = {0, 1};
    auto r = phase2_place(hb, Item(10, Rat(9)));
    REQUIRE(r.has_value());
    CHECK(r->bin_id == 1);  // 10+9 > 18, lands on the L bin
    CHECK(r->load_after == Rat(16));

    PackerState full = synth(1, {{Rat(6), Rat(6), Rat(5)}});
    full.phase = Phase::TwoRegular;
    full.phase2_list = {0};
    CHECK(!phase2_place(full, Item(3, Rat(2))).has_value());
}

TEST_CASE("run on the tightness pattern reaches exactly 18") {
    Instance inst(3, {Rat(6), Rat(6), Rat(12), Rat(12)});
    RunResult res = run(inst, Algorithm::Stretch15);
    CHECK(!res.failed_at.has_value());
    CHECK(res.max_load == Rat(18));
    CHECK(res.final_loads == std::vector<Rat>{Rat(18), Rat(18), Rat(0)});
    CHECK(!res.branch.has_value());  // everything packed in phase 1
}

TEST_CASE("run trivia") {
    Instance one(1, {Rat(12)});
    RunResult res = run(one, Algorithm::Stretch15);
    CHECK(res.max_load == Rat(12));
    CHECK(!res.failed_at.has_value());

    Instance empty(2, {});
    RunResult e = run(empty, Algorithm::Stretch15);
    CHECK(e.max_load == Rat(0));
    CHECK(e.placements.empty());
}

TEST_CASE("five large items across four bins stay at 14") {
    Instance inst(4, std::vector<Rat>(5, Rat(7)));
    RunResult res = run(inst, Algorithm::Stretch15);
    CHECK(!res.failed_at.has_value());
    CHECK(res.max_load == Rat(14));
    CHECK(res.final_loads == std::vector<Rat>{Rat(14), Rat(14), Rat(7), Rat(0)});
}

TEST_CASE("run enters the regular branch and uses reverse First Fit") {
    // m=1: item 5 makes an R bin, r=1 >= 3e=0 stops phase 1
    Instance inst(1, {Rat(5), Rat(7)});
    RunResult res = run(inst, Algorithm::Stretch15);
    REQUIRE(res.branch.has_value());
    CHECK(*res.branch == Phase::TwoRegular);
    CHECK(res.lambda == 1);
    CHECK(res.phase2_list == std::vector<int>{0});
    CHECK(res.max_load == Rat(12));

    // huge item after the transition scans in reverse
    Instance inst2(2, {Rat(5), Rat(5), Rat(3), Rat(10)});
    RunResult r2 = run(inst2, Algorithm::Stretch15);
    REQUIRE(r2.branch.has_value());
    CHECK(*r2.branch == Phase::TwoRegular);
    REQUIRE(!r2.placements.empty());
    const Placement& last = r2.placements.back();
    CHECK(last.rule == "ff-rev");
    CHECK(!r2.failed_at.has_value());
}

TEST_CASE("run enters the huge branch when a huge-item bin survives") {
    // m=1: huge 10 -> H bin; r=0 >= 3e=0 stops; next items go First Fit
    Instance inst(1, {Rat(10), Rat(4), Rat(4)});
    RunResult res = run(inst, Algorithm::Stretch15);
    REQUIRE(res.branch.has_value());
    CHECK(*res.branch == Phase::TwoHuge);
    CHECK(res.lambda == std::nullopt);
    CHECK(res.max_load == Rat(18));
    CHECK(!res.failed_at.has_value());
}

TEST_CASE("zero-size items never fail, even with every bin complete") {
    // all bins complete at exactly 12 leaves an empty phase-2 list; the
    // zero-volume item must still be accepted
    Instance inst(1, {Rat(12), Rat(0)});
    RunResult res = run(inst, Algorithm::Stretch15);
    CHECK(!res.failed_at.has_value());
    CHECK(res.max_load == Rat(12));
    REQUIRE(res.placements.size() == 2);
    CHECK(res.placements[1].phase == 2);

    Instance wider(2, {Rat(12), Rat(12), Rat(0), Rat(0), Rat(0)});
    RunResult w = run(wider, Algorithm::Stretch15);
    CHECK(!w.failed_at.has_value());
    CHECK(w.max_load == Rat(12));
}

TEST_CASE("failure reports the failing item") {
    Instance bad(1, {Rat(12), Rat(12)});
    RunResult res = run(bad, Algorithm::Stretch15);
    REQUIRE(res.failed_at.has_value());
    CHECK(*res.failed_at == 1);

    RunResult ff = run(bad, Algorithm::FirstFit);
    REQUIRE(ff.failed_at.has_value());
    CHECK(*ff.failed_at == 1);
}

TEST_CASE("firstfit baseline is plain First Fit at capacity 18") {
    Instance inst(2, {Rat(10), Rat(8), Rat(10)});
    RunResult res = run(inst, Algorithm::FirstFit);
    REQUIRE(res.placements.size() == 3);
    CHECK(res.placements[0].bin_id == 0);
    CHECK(res.placements[1].bin_id == 0);  // 10+8 = 18 fits
    CHECK(res.placements[2].bin_id == 1);
    CHECK(res.placements[0].phase == 0);
    CHECK(!res.branch.has_value());
}

TEST_CASE("counters match a recount of stored types after every step") {
    SplitMix64 seeds(5);
    for (int t = 0; t < 50; ++t) {
        GenProfile prof;
        prof.pattern = GenPattern::PackFirst;
        prof.m = 1 + static_cast<int>(seeds.below(8));
        prof.n = static_cast<int>(seeds.below(30));
        prof.seed = seeds.next();
        prof.order = ArrivalOrder::Random;
        Instance inst = generate(prof);

        RunHooks hooks;
        hooks.on_place = [](const PackerState& s, const Placement&) {
            int e = 0, r = 0;
            for (const BinState& b : s.bins) {
                if (b.type == BinType::E) ++e;
                if (b.type == BinType::R) ++r;
            }
            CHECK(e == s.e);
            CHECK(r == s.r);
        };
        run(inst, Algorithm::Stretch15, hooks);
    }
}

TEST_CASE("First Fit contract: no earlier bin in scan order fits") {
    SplitMix64 seeds(17);
    for (int t = 0; t < 60; ++t) {
        GenProfile prof;
        prof.pattern = GenPattern::PackFirst;
        prof.m = 1 + static_cast<int>(seeds.below(8));
        prof.n = static_cast<int>(seeds.below(32));
        prof.seed = seeds.next();
        prof.order = ArrivalOrder::Random;
        Instance inst = generate(prof);
        RunResult res = run(inst, Algorithm::Stretch15);

        std::vector<Rat> loads(inst.m, Rat(0));
        for (const Placement& p : res.placements) {
            const Item& item = inst.items[p.item_index];
            if (p.phase == 2) {
                std::vector<int> scan = res.phase2_list;
                if (p.rule == "ff-rev") std::reverse(scan.begin(), scan.end());
                for (int id : scan) {
                    if (id == p.bin_id) break;
                    CHECK(loads[id] + item.size > Rat(18));
                }
            }
            loads[p.bin_id] += item.size;
        }
    }
}

TEST_CASE("identical instances replay identically and prefixes are stable") {
    SplitMix64 seeds(23);
    for (int t = 0; t < 25; ++t) {
        GenProfile prof;
        prof.pattern = GenPattern::PackFirst;
        prof.m = 1 + static_cast<int>(seeds.below(6));
        prof.n = static_cast<int>(seeds.below(24));
        prof.seed = seeds.next();
        prof.order = ArrivalOrder::Random;
        Instance inst = generate(prof);

        RunResult a = run(inst, Algorithm::Stretch15);
        RunResult b = run(inst, Algorithm::Stretch15);
        REQUIRE(a.placements.size() == b.placements.size());
        for (std::size_t i = 0; i < a.placements.size(); ++i) {
            CHECK(placements_equal(a.placements[i], b.placements[i]));
        }

        // the online property: deleting a suffix never changes the prefix
        std::size_t cut = inst.items.size() / 2;
        std::vector<Rat> head;
        for (std::size_t i = 0; i < cut; ++i) head.push_back(inst.items[i].size);
        Instance prefix(inst.m, std::move(head));
        RunResult c = run(prefix, Algorithm::Stretch15);
        REQUIRE(c.placements.size() <= a.placements.size());
        for (std::size_t i = 0; i < c.placements.size(); ++i) {
            CHECK(placements_equal(a.placements[i], c.placements[i]));
        }
    }
}

TEST_CASE("huge-heavy corpus drives the huge branch and stays within 18") {
    // packfirst rarely leaves huge-item bins alive at the phase switch, so
    // build instances around them: every bin holds one huge piece plus an
    // optional filler, witness by construction.
    SplitMix64 rng(404);
    int huge_branch_runs = 0;
    for (int t = 0; t < 400; ++t) {
        int m = 1 + static_cast<int>(rng.below(4));
        std::vector<Rat> sizes;
        std::vector<int> bin_of;
        for (int b = 0; b < m; ++b) {
            long d = 1 + static_cast<long>(rng.below(60));
            Rat huge = Rat(9) + Rat(static_cast<long>(1 + rng.below(3 * d)), d);
            if (huge > 12) huge = Rat(12);
            sizes.push_back(huge);
            bin_of.push_back(b);
            Rat room = Rat(12) - huge;
            if (!room.is_zero() && rng.below(2) == 0) {
                long fd = 1 + static_cast<long>(rng.below(60));
                long max_num = (room * Rat(fd)).floor_long();
                sizes.push_back(Rat(static_cast<long>(rng.below(max_num + 1)), fd));
                bin_of.push_back(b);
            }
        }
        Instance inst(m, std::vector<Rat>(sizes));
        Packing w;
        w.capacity = Rat(12);
        w.assignment = bin_of;
        w.bin_loads.assign(m, Rat(0));
        for (std::size_t i = 0; i < sizes.size(); ++i) w.bin_loads[bin_of[i]] += sizes[i];
        inst.witness = w;
        REQUIRE(verify_packing(inst.items, m, *inst.witness));
        inst = permute(inst, ArrivalOrder::Random, rng.next());

        AuditedRun ar = audited_run(inst, Algorithm::Stretch15);
        CHECK(!ar.result.failed_at.has_value());
        CHECK(ar.result.max_load <= Rat(18));
        CHECK(ar.violations.empty());
        if (ar.result.branch && *ar.result.branch == Phase::TwoHuge) ++huge_branch_runs;
    }
    CHECK(huge_branch_runs > 60);  // 94 with this seed; the branch is genuinely hot
}

TEST_CASE("OnlinePacker matches batch run step for step") {
    Instance inst(3, {Rat(6), Rat(6), Rat(12), Rat(4), Rat(4)});
    RunResult batch = run(inst, Algorithm::Stretch15);
    OnlinePacker packer(3, Algorithm::Stretch15);
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        auto p = packer.push(inst.items[i].size);
        if (batch.failed_at && static_cast<int>(i) == *batch.failed_at) {
            CHECK(!p.has_value());
            break;
        }
        REQUIRE(p.has_value());
        CHECK(placements_equal(*p, batch.placements[i]));
    }
    if (!batch.failed_at) CHECK(packer.max_load() == batch.max_load);
}
