#ifndef STRETCHPACK_GENERATOR_HPP
#define STRETCHPACK_GENERATOR_HPP

#include <cstdint>
#include <string>

#include "stretchpack/model.hpp"

namespace stretchpack {

enum class GenPattern { PackFirst, Tightness, MediumFlood, LargePairs };
enum class ArrivalOrder { Random, Asc, Desc, AsConstructed };

GenPattern pattern_from_name(const std::string& name);
ArrivalOrder order_from_name(const std::string& name);
const char* pattern_name(GenPattern p);
const char* order_name(ArrivalOrder o);

struct GenProfile {
    GenPattern pattern = GenPattern::PackFirst;
    int m = 1;
    int n = 0;                  // packfirst only; other patterns fix their own n
    std::uint64_t seed = 0;
    ArrivalOrder order = ArrivalOrder::AsConstructed;
    long max_den = 60;          // packfirst piece denominators
};

// Instances valid by construction: a capacity-12 witness is attached.
Instance generate(const GenProfile& profile);

// Same multiset of items in a new arrival order; the witness is remapped.
Instance permute(const Instance& instance, ArrivalOrder order, std::uint64_t seed);

}  // namespace stretchpack

#endif
