#pragma once

// Multivariate integer polynomials: the defining forms of models, divisors and Brauer
// class representatives. Coefficients are arbitrary precision; ModPoly is a compiled copy
// reduced modulo a word-sized modulus for the residue-class kernels.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbarith/bigint.hpp"

namespace orbarith {

using Exponents = std::vector<int>;

class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const BigInt& c);
    static Poly variable(int nvars, int index);
    static Poly monomial(const Exponents& exps, const BigInt& c);

    /// Parses expressions like "3*(x-y)*(x+y) - (t-4*z)*(t+4*z)" over the given variables.
    static Poly parse(const std::string& expr, const std::vector<std::string>& var_names);

    int nvars() const { return nvars_; }
    const std::map<Exponents, BigInt>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const;
    int degree_in(int var) const;
    bool is_homogeneous() const;

    /// gcd of the coefficients (positive); 0 for the zero polynomial.
    BigInt content() const;

    Poly derivative(int var) const;
    Poly pow(unsigned e) const;

    BigInt eval(std::span<const BigInt> x) const;
    BigInt constant_term() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const BigInt& c);
    Poly& divide_exact(const BigInt& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const BigInt& c) { return a *= c; }
    friend Poly operator-(Poly a) { return a *= BigInt(-1); }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// If this == c * base^j for some nonzero rational c and j >= 1, returns j; else 0.
    int power_of(const Poly& base) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    void add_term(const Exponents& e, const BigInt& c);

    int nvars_ = 0;
    std::map<Exponents, BigInt> terms_;
};

/// Default variable names x0, x1, ...
std::vector<std::string> default_var_names(int nvars);

/// A polynomial compiled for evaluation modulo M, M < 2^63.
class ModPoly {
public:
    ModPoly() = default;
    ModPoly(const Poly& p, std::uint64_t modulus);

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t eval(std::span<const std::uint64_t> x) const;

    /// Coefficients (constant term first) of the univariate polynomial in `var` obtained by
    /// fixing every other coordinate to the given values.
    std::vector<std::uint64_t> univariate(int var, std::span<const std::uint64_t> x) const;

private:
    std::uint64_t modulus_ = 1;
    int nvars_ = 0;
    std::vector<std::uint8_t> exps_;  // row-major, nvars_ per term
    std::vector<std::uint64_t> coeffs_;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;  // a, b < m < 2^63
    return s >= m ? s - m : s;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

}  // namespace orbarith
