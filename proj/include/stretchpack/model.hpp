#ifndef STRETCHPACK_MODEL_HPP
#define STRETCHPACK_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stretchpack/rational.hpp"

namespace stretchpack {

// Everything runs at the canonical scale: optimal bins have capacity 12,
// the online algorithm's bins capacity 18. Inputs given at scale 1 are
// multiplied by 12 exactly on ingestion (io layer).
inline const Rat kOptCapacity{12};
inline const Rat kAlgoCapacity{18};

enum class ItemClass { Regular, Medium, Large, Huge };

const char* class_name(ItemClass c);

// Size must lie in [0,12]. Boundaries are closed on the right:
// regular (0,3] u (4,6] (size 0 counts as regular), medium (3,4],
// large (6,9], huge (9,12].
ItemClass classify(const Rat& size);

// Per-item value: huge 3, large 2, medium 1, regular 0.
int item_value(ItemClass c);

struct Item {
    int index = 0;  // 0-based arrival position
    Rat size;
    ItemClass cls = ItemClass::Regular;

    Item() = default;
    Item(int index, Rat size) : index(index), size(std::move(size)), cls(classify(this->size)) {}
};

// Definition-2 bin types. Classification is evaluated in this order;
// exactly one predicate holds for every bin the first phase creates.
enum class BinType { E, G, H, L, M, T, R };

const char* type_name(BinType t);

struct BinState {
    int id = 0;                // creation-order id == index into the bin list
    std::vector<Item> contents;
    Rat load;                  // sum of content sizes
    int k = 0;                 // count of large+huge items
    BinType type = BinType::E;

    bool empty() const { return contents.empty(); }
    void add(const Item& it);  // updates load and k, not type
};

// v(A) = (sum of item values) - 3
int bin_value(const BinState& bin);

// w(A) = s(A) + k(A) - 13
Rat bin_weight(const BinState& bin);

// Ordered predicate list E,G,H,L,M,T,R; nullopt when no predicate matches
// (an invariant violation for engine-created phase-1 bins, surfaced by audit).
std::optional<BinType> try_classify_bin(const BinState& bin);

// Throwing form used on the engine's hot path.
BinType classify_bin(const BinState& bin);

// An offline assignment of every item to one of m bins.
struct Packing {
    Rat capacity;
    std::vector<int> assignment;  // item index -> bin index in [0, m)
    std::vector<Rat> bin_loads;   // exactly m entries, empty bins included
};

struct Instance {
    int m = 1;
    std::vector<Item> items;
    std::optional<Packing> witness;  // capacity-12 packing, when known

    Instance() = default;
    Instance(int m, std::vector<Rat> sizes);
};

// Recounts a packing against the items: every item assigned once, loads
// consistent, every load <= capacity. Independent of any search path.
bool verify_packing(const std::vector<Item>& items, int m, const Packing& p);

// Raised when the engine detects a broken internal invariant (a bug, never
// an input problem).
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace stretchpack

#endif
