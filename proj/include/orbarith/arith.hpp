#pragma once

// Exact integer primitives: valuations, m-full / m-th power tests, the classical
// multiplicative functions and quadratic residue symbols. Everything here is a pure
// function of its arguments.

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "orbarith/bigint.hpp"

namespace orbarith {

/// A value in N ∪ {∞}. Intersection multiplicities and valuations live here.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr explicit ExtNat(std::uint64_t v) : value_(v) {}

    static constexpr ExtNat infinity() {
        ExtNat e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    // Precondition: is_finite().
    std::uint64_t value() const;

    friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend constexpr ExtNat operator+(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtNat(a.value_ + b.value_);
    }

    std::string to_string() const;

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtNat& e);

/// sign · ∏ p^e for a nonzero integer.
struct Factorization {
    int sign = 1;
    std::map<BigInt, unsigned> factors;

    BigInt value() const;
};

bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// Factors a nonzero integer: trial division below trial_bound, then a probable-prime
/// test and Pollard–Brent on whatever cofactor is left.
Factorization factorize(const BigInt& n, std::uint64_t trial_bound = 1'000'000);

/// The distinct prime divisors of |n| in increasing order (n != 0).
std::vector<BigInt> prime_divisors(const BigInt& n);

ExtNat padic_valuation(const BigInt& n, const BigInt& p);

/// Valuation without the primality check; p > 1. Returns UINT64_MAX for n = 0.
std::uint64_t valuation_unchecked(const BigInt& n, const BigInt& p);

bool is_m_full(const BigInt& n, unsigned m);
bool is_m_power_up_to_unit(const BigInt& n, unsigned m);

int mobius(const BigInt& n);
BigInt euler_phi(const BigInt& n);
BigInt tau(const BigInt& n);

/// Small-argument variants used by the census kernels.
int mobius_u64(std::uint64_t n);
bool is_squarefree_u64(std::uint64_t n);

int legendre(const BigInt& a, const BigInt& p);
int jacobi(const BigInt& a, const BigInt& n);

}  // namespace orbarith
