#ifndef STRETCHPACK_RATIONAL_HPP
#define STRETCHPACK_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace stretchpack {

// Exact rational number. Always held in canonical form: den > 0,
// gcd(|num|, den) = 1. Every arithmetic operation is exact.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}                     // NOLINT: implicit by design
    Rat(long num, long den);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rat from_parts(const mpz_class& num, const mpz_class& den);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }

    // Canonical text form: "p/q", or "p" when q == 1.
    std::string str() const;

    // Floor as a long; requires the result to fit (true for all sizes/loads).
    long floor_long() const;

    std::uint64_t hash() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class v_;
};

}  // namespace stretchpack

template <>
struct std::hash<stretchpack::Rat> {
    std::size_t operator()(const stretchpack::Rat& r) const { return r.hash(); }
};

#endif
