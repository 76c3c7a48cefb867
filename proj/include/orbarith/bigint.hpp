#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace orbarith {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt big(long v) { return BigInt(v); }

inline BigInt pow_big(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt gcd_big(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline int sign_of(const BigInt& a) { return sgn(a); }

// Exact conversion; throws if the value does not fit.
std::int64_t to_i64(const BigInt& v);
std::uint64_t to_u64(const BigInt& v);
bool fits_i64(const BigInt& v);

// Non-negative residue of v modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

BigInt parse_bigint(const std::string& s);

// Integer square root test: returns true and sets root when n is a perfect square (n >= 0).
bool is_square(const BigInt& n, BigInt* root = nullptr);

}  // namespace orbarith
