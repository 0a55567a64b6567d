#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stretchpack/model.hpp"
#include "stretchpack/rng.hpp"

using namespace stretchpack;

namespace {

BinState make_bin(std::initializer_list<Rat> sizes, int id = 0) {
    BinState b;
    b.id = id;
    int i = 0;
    for (const Rat& s : sizes) b.add(Item(i++, s));
    return b;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    Rat a(1, 3), b(1, 6);
    CHECK((a + b) == Rat(1, 2));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(2, 4).num() == 1);
    CHECK(Rat(2, 4).den() == 2);
    CHECK(Rat(-2, 4).str() == "-1/2");
    CHECK(Rat(-3, -6) == Rat(1, 2));  // canonical form keeps den positive
    CHECK(Rat(7).str() == "7");
    CHECK(Rat(19, 2).str() == "19/2");
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::invalid_argument);
    CHECK(Rat(7, 2).floor_long() == 3);
    CHECK(Rat(-7, 2).floor_long() == -4);
}

TEST_CASE("(a+b)-b == a for random rationals with large denominators") {
    SplitMix64 rng(42);
    for (int t = 0; t < 2000; ++t) {
        long d1 = 1 + static_cast<long>(rng.below(1000000));
        long d2 = 1 + static_cast<long>(rng.below(1000000));
        Rat a(static_cast<long>(rng.below(2000001)) - 1000000, d1);
        Rat b(static_cast<long>(rng.below(2000001)) - 1000000, d2);
        CHECK((a + b) - b == a);
        CHECK((a * b) == (b * a));
    }
}

TEST_CASE("classify follows the class table with right-closed boundaries") {
    CHECK(classify(Rat(3)) == ItemClass::Regular);
    CHECK(classify(Rat(4)) == ItemClass::Medium);
    CHECK(classify(Rat(9)) == ItemClass::Large);
    CHECK(classify(Rat(19, 2)) == ItemClass::Huge);
    CHECK(classify(Rat(0)) == ItemClass::Regular);
    CHECK(classify(Rat(6)) == ItemClass::Regular);
    CHECK(classify(Rat(12)) == ItemClass::Huge);
    // just over each boundary
    CHECK(classify(Rat(31, 10)) == ItemClass::Medium);
    CHECK(classify(Rat(41, 10)) == ItemClass::Regular);
    CHECK(classify(Rat(61, 10)) == ItemClass::Large);
    CHECK(classify(Rat(91, 10)) == ItemClass::Huge);
    CHECK_THROWS_AS(classify(Rat(-1, 2)), std::domain_error);
    CHECK_THROWS_AS(classify(Rat(121, 10)), std::domain_error);
}

TEST_CASE("item values per class") {
    CHECK(item_value(ItemClass::Huge) == 3);
    CHECK(item_value(ItemClass::Large) == 2);
    CHECK(item_value(ItemClass::Medium) == 1);
    CHECK(item_value(ItemClass::Regular) == 0);
}

TEST_CASE("bin value and weight") {
    BinState two_larges = make_bin({Rat(7), Rat(7)});
    CHECK(bin_value(two_larges) == 1);
    CHECK(bin_weight(two_larges) == Rat(3));  // 14 + 2 - 13

    BinState empty;
    CHECK(bin_value(empty) == -3);
    CHECK(bin_weight(empty) == Rat(-13));

    BinState huge_plus = make_bin({Rat(10), Rat(5)});
    CHECK(bin_value(huge_plus) == 0);
    CHECK(bin_weight(huge_plus) == Rat(3));  // 15 + 1 - 13
}

TEST_CASE("bin classification follows the ordered predicates") {
    CHECK(classify_bin(BinState{}) == BinType::E);
    CHECK(classify_bin(make_bin({Rat(6)})) == BinType::R);
    CHECK(classify_bin(make_bin({Rat(12)})) == BinType::G);  // w = 0, load >= 12
    // three mediums of 4: load 12 but w = -1, so not complete
    CHECK(classify_bin(make_bin({Rat(4), Rat(4), Rat(4)})) == BinType::M);
    CHECK(classify_bin(make_bin({Rat(10)})) == BinType::H);
    CHECK(classify_bin(make_bin({Rat(7)})) == BinType::L);
    CHECK(classify_bin(make_bin({Rat(7, 2)})) == BinType::M);
    CHECK(classify_bin(make_bin({Rat(3)})) == BinType::T);
    CHECK(classify_bin(make_bin({Rat(1), Rat(2)})) == BinType::T);
    CHECK(classify_bin(make_bin({Rat(2), Rat(2)})) == BinType::R);
    CHECK(classify_bin(make_bin({Rat(10), Rat(5)})) == BinType::G);
    // a zero-size item alone makes a (degenerate) tiny bin
    CHECK(classify_bin(make_bin({Rat(0)})) == BinType::T);

    BinState unmatched = make_bin({Rat(5), Rat(2)});  // load 7, k = 0
    CHECK(!try_classify_bin(unmatched).has_value());
    CHECK_THROWS_AS(classify_bin(unmatched), InvariantError);
}

TEST_CASE("weight and value are additive over bin lists") {
    SplitMix64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::vector<BinState> bins;
        Rat total_load(0);
        int total_k = 0, item_values = 0;
        int nbins = 1 + static_cast<int>(rng.below(6));
        int idx = 0;
        for (int b = 0; b < nbins; ++b) {
            BinState bin;
            bin.id = b;
            int items = static_cast<int>(rng.below(5));
            for (int i = 0; i < items; ++i) {
                Rat s(static_cast<long>(rng.below(121)), 10);
                Item it(idx++, s);
                bin.add(it);
                total_load += s;
                if (it.cls == ItemClass::Large || it.cls == ItemClass::Huge) ++total_k;
                item_values += item_value(it.cls);
            }
            bins.push_back(std::move(bin));
        }
        Rat sum_w(0);
        int sum_v = 0;
        for (const BinState& b : bins) {
            sum_w += bin_weight(b);
            sum_v += bin_value(b);
        }
        CHECK(sum_w == total_load + Rat(total_k) - Rat(13L * nbins));
        CHECK(sum_v == item_values - 3 * nbins);
    }
}

TEST_CASE("instance construction and packing recount") {
    Instance inst(3, {Rat(6), Rat(6), Rat(12), Rat(12)});
    CHECK(inst.items.size() == 4);
    CHECK(inst.items[2].cls == ItemClass::Huge);
    CHECK_THROWS_AS(Instance(0, {}), std::domain_error);

    Packing p;
    p.capacity = Rat(12);
    p.assignment = {0, 0, 1, 2};
    p.bin_loads = {Rat(12), Rat(12), Rat(12)};
    CHECK(verify_packing(inst.items, 3, p));

    p.bin_loads = {Rat(12), Rat(12), Rat(11)};  // inconsistent recount
    CHECK(!verify_packing(inst.items, 3, p));

    Packing q;
    q.capacity = Rat(12);
    q.assignment = {0, 0, 0, 1};  // bin 0 overloaded
    q.bin_loads = {Rat(24), Rat(12), Rat(0)};
    CHECK(!verify_packing(inst.items, 3, q));
}
