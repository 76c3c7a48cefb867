#pragma once

// Brute-force references used by the unit tests and the acceptance binary. They share no
// code with the library beyond BigInt.

#include <cstdint>
#include <numeric>
#include <vector>

#include "orbarith/bigint.hpp"

namespace oracle {

using orbarith::BigInt;

inline BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline int val(BigInt n, long p) {
    if (n == 0) return 1 << 20;
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

// Drop square factors: n = s^2 * r with r squarefree, sign kept.
inline BigInt squarefree_part(BigInt n) {
    BigInt out = n < 0 ? BigInt(-1) : BigInt(1);
    if (n < 0) n = -n;
    for (long q = 2; BigInt(q) * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e % 2) out *= q;
    }
    return out * n;
}

// Does a x^2 + b y^2 - z^2 = 0 have a primitive solution in Z_p? Solutions are scaled so the
// first unit coordinate (the lead) is 1; coordinates before it are divisible by p. Classes are
// lifted one p-adic digit at a time by trying every digit. A class whose gradient has
// valuation e at precision k >= 2e + 1 lifts to a root (Hensel). With a, b squarefree every
// primitive solution has e <= 1 (odd p) or e <= 2 (p = 2), so precision 3 or 5 decides.
inline bool conic_soluble(BigInt a, BigInt b, long p) {
    a = squarefree_part(a);
    b = squarefree_part(b);
    const int K = p == 2 ? 5 : 3;
    struct Cls {
        int lead;
        BigInt v[3];
    };
    auto F = [&](const Cls& c) -> BigInt { return a * c.v[0] * c.v[0] + b * c.v[1] * c.v[1] - c.v[2] * c.v[2]; };
    auto certified = [&](const Cls& c, int k) {
        const BigInt g[3] = {2 * a * c.v[0], 2 * b * c.v[1], -2 * c.v[2]};
        for (const auto& gi : g) {
            const int e = val(gi, p);
            if (e < k && k >= 2 * e + 1) return true;
        }
        return false;
    };
    BigInt pk = p;
    std::vector<Cls> level;
    for (int lead = 0; lead < 3; ++lead) {
        const int nfree = 2 - lead;
        long count = 1;
        for (int i = 0; i < nfree; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            Cls c{lead, {0, 0, 0}};
            c.v[lead] = 1;
            long r = idx;
            for (int i = lead + 1; i < 3; ++i) {
                c.v[i] = r % p;
                r /= p;
            }
            if (mod(F(c), pk) == 0) level.push_back(c);
        }
    }
    for (int k = 1;; ++k) {
        for (const auto& c : level)
            if (certified(c, k)) return true;
        if (k == K || level.empty()) return false;
        std::vector<Cls> next;
        const BigInt step = pk;
        pk *= p;
        for (const auto& c : level)
            for (long d0 = 0; d0 < p; ++d0)
                for (long d1 = 0; d1 < p; ++d1) {
                    Cls n = c;
                    const long digits[2] = {d0, d1};
                    int di = 0;
                    for (int i = 0; i < 3; ++i)
                        if (i != c.lead) n.v[i] += step * digits[di++];
                    if (mod(F(n), pk) == 0) next.push_back(std::move(n));
                }
        level.swap(next);
    }
}

// Hilbert symbol by the definition: +1 iff z^2 = a x^2 + b y^2 is soluble over Q_p.
inline int hilbert_by_conic(const BigInt& a, const BigInt& b, long p) { return conic_soluble(a, b, p) ? 1 : -1; }

inline bool squarefree(std::uint64_t n) {
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0) return false;
    return true;
}

// Four nested loops over (a, b, c, d) with b, c, d > 0 and every constraint checked directly.
// With signed_b, negative b are counted too; a_max caps a.
inline std::uint64_t census_count(std::uint64_t B, bool signed_b = false, std::uint64_t a_max = ~std::uint64_t{0}) {
    std::uint64_t n = 0;
    for (std::uint64_t a = 1; 25 * a <= B && a <= a_max; ++a) {
        if (a % 40 != 1 || !squarefree(a)) continue;
        for (std::int64_t b = signed_b ? -2000 : 1; b <= 2000; ++b) {
            if (b == 0) continue;
            const std::uint64_t bb = static_cast<std::uint64_t>(b < 0 ? -b : b);
            if (5 * a * bb * bb > B) {
                if (b > 0) break;
                continue;
            }
            for (std::uint64_t d = 1; 25 * a * d * d <= B; ++d)
                for (std::uint64_t c = 1; 16 * c * c <= B; ++c) {
                    if (a % 5 == 0 || bb % 5 == 0 || c % 5 == 0 || d % 5 == 0) continue;
                    if (std::gcd(a, c) != 1) continue;
                    if (std::gcd(bb * d, 2 * c) != 1) continue;
                    ++n;
                }
        }
    }
    return n;
}

// m-full by trial division of |n|.
inline bool m_full(long n, unsigned m) {
    if (n < 0) n = -n;
    for (long q = 2; q <= n; ++q) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e > 0 && e < m) return false;
    }
    return true;
}

inline bool m_power(long n, unsigned m) {
    if (n < 0) n = -n;
    for (long q = 2; q <= n; ++q) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e % m) return false;
    }
    return true;
}

}  // namespace oracle
