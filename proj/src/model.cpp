#include "stretchpack/model.hpp"

namespace stretchpack {

const char* class_name(ItemClass c) {
    switch (c) {
        case ItemClass::Regular: return "regular";
        case ItemClass::Medium: return "medium";
        case ItemClass::Large: return "large";
        case ItemClass::Huge: return "huge";
    }
    return "?";
}

ItemClass classify(const Rat& size) {
    if (size < 0 || size > 12) throw std::domain_error("classify: size outside [0,12]");
    if (size > 9) return ItemClass::Huge;
    if (size > 6) return ItemClass::Large;
    if (size > 4) return ItemClass::Regular;
    if (size > 3) return ItemClass::Medium;
    return ItemClass::Regular;
}

int item_value(ItemClass c) {
    switch (c) {
        case ItemClass::Huge: return 3;
        case ItemClass::Large: return 2;
        case ItemClass::Medium: return 1;
        case ItemClass::Regular: return 0;
    }
    return 0;
}

const char* type_name(BinType t) {
    switch (t) {
        case BinType::E: return "E";
        case BinType::G: return "G";
        case BinType::H: return "H";
        case BinType::L: return "L";
        case BinType::M: return "M";
        case BinType::T: return "T";
        case BinType::R: return "R";
    }
    return "?";
}

void BinState::add(const Item& it) {
    contents.push_back(it);
    load += it.size;
    if (it.cls == ItemClass::Large || it.cls == ItemClass::Huge) ++k;
}

int bin_value(const BinState& bin) {
    int v = -3;
    for (const Item& it : bin.contents) v += item_value(it.cls);
    return v;
}

Rat bin_weight(const BinState& bin) {
    return bin.load + Rat(bin.k) - Rat(13);
}

std::optional<BinType> try_classify_bin(const BinState& bin) {
    if (bin.empty()) return BinType::E;
    if (bin_weight(bin) >= 0 && bin.load >= 12) return BinType::G;
    bool has_huge = false, all_medium = true;
    for (const Item& it : bin.contents) {
        if (it.cls == ItemClass::Huge) has_huge = true;
        if (it.cls != ItemClass::Medium) all_medium = false;
    }
    if (has_huge && bin.load < 12) return BinType::H;
    if (bin.contents.size() == 1 && bin.contents[0].cls == ItemClass::Large) return BinType::L;
    if (all_medium && bin.load < 13) return BinType::M;
    if (bin.load <= 3) return BinType::T;
    if (bin.load > 3 && bin.load <= 6) return BinType::R;
    return std::nullopt;
}

BinType classify_bin(const BinState& bin) {
    auto t = try_classify_bin(bin);
    if (!t) {
        throw InvariantError("classify_bin: bin " + std::to_string(bin.id) +
                             " (load " + bin.load.str() + ", k " + std::to_string(bin.k) +
                             ") matches no Definition-2 type");
    }
    return *t;
}

Instance::Instance(int m, std::vector<Rat> sizes) : m(m) {
    if (m < 1) throw std::domain_error("Instance: m must be positive");
    items.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        items.emplace_back(static_cast<int>(i), std::move(sizes[i]));
    }
}

bool verify_packing(const std::vector<Item>& items, int m, const Packing& p) {
    if (m < 1) return false;
    if (p.assignment.size() != items.size()) return false;
    if (p.bin_loads.size() != static_cast<std::size_t>(m)) return false;
    std::vector<Rat> loads(m);
    for (std::size_t i = 0; i < items.size(); ++i) {
        int b = p.assignment[i];
        if (b < 0 || b >= m) return false;
        loads[b] += items[i].size;
    }
    for (int b = 0; b < m; ++b) {
        if (loads[b] != p.bin_loads[b]) return false;
        if (loads[b] > p.capacity) return false;
    }
    return true;
}

}  // namespace stretchpack
