#include "orbarith/arith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "orbarith/errors.hpp"

namespace orbarith {

std::uint64_t ExtNat::value() const {
    if (infinite_) throw Error(ErrorKind::Unsupported, "value() on infinite ExtNat");
    return value_;
}

std::string ExtNat::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, const ExtNat& e) { return os << e.to_string(); }

BigInt Factorization::value() const {
    BigInt v = sign;
    for (const auto& [p, e] : factors) v *= pow_big(p, e);
    return v;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    if (n < 289) return true;
    return is_prime(BigInt(static_cast<unsigned long>(n)));
}

namespace {

// Pollard–Brent; n composite, odd, > 1.
BigInt pollard_brent(const BigInt& n) {
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto f = [&](const BigInt& v) {
            BigInt w = v * v + c;
            mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
            return w;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt d = x - y;
                    q = (q * abs(d)) % n;
                }
                g = gcd_big(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_big(abs(BigInt(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(const BigInt& n, std::uint64_t trial_bound) {
    if (n == 0) throw Error(ErrorKind::ZeroInput, "factorize(0)");
    Factorization f;
    f.sign = sgn(n) < 0 ? -1 : 1;
    BigInt m = abs(n);
    auto strip = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) f.factors[BigInt(p)] = e;
    };
    strip(2);
    for (unsigned long p = 3; p <= trial_bound; p += 2) {
        if (BigInt(p) * p > m) break;
        strip(p);
    }
    if (m > 1) {
        std::map<BigInt, unsigned> rest;
        factor_into(m, rest);
        for (const auto& [p, e] : rest) f.factors[p] += e;
    }
    return f;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
    std::vector<BigInt> out;
    for (const auto& [p, e] : factorize(n).factors) out.push_back(p);
    return out;
}

std::uint64_t valuation_unchecked(const BigInt& n, const BigInt& p) {
    if (n == 0) return std::numeric_limits<std::uint64_t>::max();
    BigInt rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

ExtNat padic_valuation(const BigInt& n, const BigInt& p) {
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not prime");
    if (n == 0) return ExtNat::infinity();
    return ExtNat(valuation_unchecked(n, p));
}

bool is_m_full(const BigInt& n, unsigned m) {
    if (n == 0) throw Error(ErrorKind::ZeroInput, "is_m_full(0)");
    if (m == 0) throw Error(ErrorKind::Unsupported, "m must be >= 1");
    for (const auto& [p, e] : factorize(n).factors)
        if (e < m) return false;
    return true;
}

bool is_m_power_up_to_unit(const BigInt& n, unsigned m) {
    if (n == 0) throw Error(ErrorKind::ZeroInput, "is_m_power_up_to_unit(0)");
    if (m == 0) throw Error(ErrorKind::Unsupported, "m must be >= 1");
    for (const auto& [p, e] : factorize(n).factors)
        if (e % m != 0) return false;
    return true;
}

int mobius(const BigInt& n) {
    if (n < 1) throw Error(ErrorKind::ZeroInput, "mobius needs n >= 1");
    int r = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        r = -r;
    }
    return r;
}

BigInt euler_phi(const BigInt& n) {
    if (n < 1) throw Error(ErrorKind::ZeroInput, "euler_phi needs n >= 1");
    BigInt r = 1;
    for (const auto& [p, e] : factorize(n).factors) r *= (p - 1) * pow_big(p, e - 1);
    return r;
}

BigInt tau(const BigInt& n) {
    if (n < 1) throw Error(ErrorKind::ZeroInput, "tau needs n >= 1");
    BigInt r = 1;
    for (const auto& [p, e] : factorize(n).factors) r *= e + 1;
    return r;
}

int mobius_u64(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::ZeroInput, "mobius needs n >= 1");
    int r = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

bool is_squarefree_u64(std::uint64_t n) { return mobius_u64(n) != 0; }

int legendre(const BigInt& a, const BigInt& p) {
    if (mpz_even_p(p.get_mpz_t())) throw Error(ErrorKind::EvenModulus, "legendre modulus " + p.get_str());
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not prime");
    BigInt r = a % p;
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int jacobi(const BigInt& a, const BigInt& n) {
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw Error(ErrorKind::EvenModulus, "jacobi modulus must be odd and positive: " + n.get_str());
    BigInt r = a % n;
    if (r < 0) r += n;
    return mpz_jacobi(r.get_mpz_t(), n.get_mpz_t());
}

}  // namespace orbarith
