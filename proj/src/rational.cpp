#include "stretchpack/rational.hpp"

#include <ostream>

namespace stretchpack {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::from_parts(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    mpq_class q(num);
    q /= mpq_class(den);
    return Rat(q);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long Rat::floor_long() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("Rat::floor_long: out of range");
    return q.get_si();
}

std::uint64_t Rat::hash() const {
    // Residues mod two large primes; exact equality is always rechecked by
    // containers, this only needs to spread keys.
    const unsigned long p1 = 0xFFFFFFFFFFFFFFC5ul;
    const unsigned long p2 = 0xFFFFFFFFFFFFFFEFul;
    std::uint64_t hn = mpz_fdiv_ui(v_.get_num().get_mpz_t(), p1);
    std::uint64_t hd = mpz_fdiv_ui(v_.get_den().get_mpz_t(), p2);
    std::uint64_t h = hn * 0x9E3779B97F4A7C15ull;
    h ^= hd + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace stretchpack
