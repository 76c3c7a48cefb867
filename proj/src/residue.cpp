#include "orbarith/residue.hpp"

#include <limits>

#include "orbarith/errors.hpp"

namespace orbarith {

std::optional<std::uint64_t> sqrt_mod_p(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli–Shanks
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

std::vector<std::uint64_t> roots_mod_p(std::span<const std::uint64_t> coeffs_in, std::uint64_t p, bool* all) {
    std::vector<std::uint64_t> c(coeffs_in.begin(), coeffs_in.end());
    for (auto& v : c) v %= p;
    while (!c.empty() && c.back() == 0) c.pop_back();
    *all = false;
    std::vector<std::uint64_t> out;
    if (c.empty()) {
        *all = true;
        return out;
    }
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return out;
    if (deg == 1) {
        std::uint64_t inv = powmod(c[1], p - 2, p);
        out.push_back(mulmod(p - c[0] == p ? 0 : (p - c[0]) % p, inv, p));
        return out;
    }
    if (deg == 2 && p > 2) {
        std::uint64_t disc = submod(mulmod(c[1], c[1], p), mulmod(4 % p, mulmod(c[2], c[0], p), p), p);
        auto s = sqrt_mod_p(disc, p);
        if (!s) return out;
        std::uint64_t inv2a = powmod(mulmod(2, c[2], p), p - 2, p);
        std::uint64_t r1 = mulmod(submod(*s, c[1], p), inv2a, p);
        std::uint64_t r2 = mulmod(submod(p - *s == p ? 0 : p - *s, c[1], p), inv2a, p);
        out.push_back(r1);
        if (r2 != r1) out.push_back(r2);
        return out;
    }
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = addmod(mulmod(v, x, p), c[i], p);
        if (v == 0) out.push_back(x);
    }
    return out;
}

ResidueSpace::ResidueSpace(int nvars, std::span<const Poly> equations, std::uint64_t p, int max_depth)
    : nvars_(nvars), p_(p) {
    if (nvars < 2) throw Error(ErrorKind::Unsupported, "projective space needs at least two coordinates");
    if (p < 2) throw Error(ErrorKind::NonPrimeModulus, "bad prime");
    if (equations.size() > 1)
        throw Error(ErrorKind::Unsupported, "residue search supports at most one ambient equation");
    pow_.push_back(1);
    const std::uint64_t limit = 1ULL << 62;
    while (static_cast<int>(pow_.size()) <= max_depth) {
        unsigned __int128 next = static_cast<unsigned __int128>(pow_.back()) * p;
        if (next >= limit) break;
        pow_.push_back(static_cast<std::uint64_t>(next));
    }
    depth_ = static_cast<int>(pow_.size()) - 1;
    if (depth_ < 1) throw Error(ErrorKind::Unsupported, "prime too large for residue search");
    if (!equations.empty()) {
        has_eq_ = true;
        eq_ = compile(equations[0]);
    }
}

CompiledForm ResidueSpace::compile(const Poly& g) const {
    if (g.nvars() != nvars_) throw Error(ErrorKind::InvalidModel, "form arity mismatch");
    CompiledForm c;
    c.f = ModPoly(g, pow_[depth_]);
    for (int j = 0; j < nvars_; ++j) c.grad.emplace_back(g.derivative(j), pow_[depth_]);
    c.degree = g.total_degree();
    return c;
}

std::uint64_t ResidueSpace::value(const CompiledForm& g, const ResidueClass& cls, int prec) const {
    return g.f.eval(cls.x) % pow_.at(prec);
}

int ResidueSpace::valuation(const CompiledForm& g, const ResidueClass& cls, int prec) const {
    std::uint64_t v = value(g, cls, prec);
    if (v == 0) return prec;
    int e = 0;
    while (v % p_ == 0) {
        v /= p_;
        ++e;
    }
    return e;
}

std::vector<ResidueClass> ResidueSpace::level_one() const {
    std::vector<ResidueClass> out;
    const int n = nvars_;
    for (int i0 = 0; i0 < n; ++i0) {
        std::vector<std::uint64_t> x(n, 0);
        x[i0] = 1;
        const int nfree = n - 1 - i0;
        auto emit = [&](const std::vector<std::uint64_t>& v) {
            ResidueClass c;
            c.x = v;
            c.k = 1;
            c.norm = i0;
            out.push_back(std::move(c));
        };
        if (nfree == 0) {
            if (!has_eq_ || eq_.f.eval(x) % p_ == 0) emit(x);
            continue;
        }
        // Iterate all free coordinates but the last, then solve for the last one.
        const int last = n - 1;
        std::vector<int> outer;
        for (int j = i0 + 1; j < last; ++j) outer.push_back(j);
        std::vector<std::uint64_t> digit(outer.size(), 0);
        for (;;) {
            for (std::size_t t = 0; t < outer.size(); ++t) x[outer[t]] = digit[t];
            if (!has_eq_) {
                for (std::uint64_t v = 0; v < p_; ++v) {
                    x[last] = v;
                    emit(x);
                }
            } else {
                x[last] = 0;
                auto uni = eq_.f.univariate(last, x);
                bool all = false;
                auto roots = roots_mod_p(uni, p_, &all);
                if (all) {
                    for (std::uint64_t v = 0; v < p_; ++v) {
                        x[last] = v;
                        emit(x);
                    }
                } else {
                    for (auto r : roots) {
                        x[last] = r;
                        emit(x);
                    }
                }
            }
            std::size_t t = 0;
            while (t < digit.size() && ++digit[t] == p_) digit[t++] = 0;
            if (t == digit.size()) break;
        }
    }
    return out;
}

std::vector<ResidueClass> ResidueSpace::children(const ResidueClass& cls,
                                                 std::span<const CompiledForm* const> also_zero) const {
    const int k = cls.k;
    if (k + 1 > depth_) throw Error(ErrorKind::Unsupported, "refinement beyond working precision");
    const std::uint64_t pk = pow_[k], pk1 = pow_[k + 1];
    std::vector<int> free;
    for (int j = 0; j < nvars_; ++j)
        if (j != cls.norm) free.push_back(j);
    const int nf = static_cast<int>(free.size());

    // Rows: [g_0 .. g_{nf-1} | rhs] over F_p.
    std::vector<std::vector<std::uint64_t>> rows;
    auto add_row = [&](const CompiledForm& g) -> bool {
        std::uint64_t v = g.f.eval(cls.x) % pk1;
        if (v % pk != 0) return false;
        std::uint64_t c0 = (v / pk) % p_;
        std::vector<std::uint64_t> row(nf + 1);
        for (int t = 0; t < nf; ++t) row[t] = g.grad[free[t]].eval(cls.x) % p_;
        row[nf] = (p_ - c0) % p_;
        rows.push_back(std::move(row));
        return true;
    };
    if (has_eq_ && !add_row(eq_)) return {};
    for (const CompiledForm* g : also_zero)
        if (!add_row(*g)) return {};

    // Gaussian elimination mod p.
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int col = 0; col < nf && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        std::uint64_t inv = powmod(rows[r][col], p_ - 2, p_);
        for (auto& v : rows[r]) v = mulmod(v, inv, p_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            std::uint64_t f = rows[i][col];
            for (int t = 0; t <= nf; ++t) rows[i][t] = submod(rows[i][t], mulmod(f, rows[r][t], p_), p_);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][nf] != 0) return {};

    std::vector<bool> is_pivot(nf, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<int> params;
    for (int c = 0; c < nf; ++c)
        if (!is_pivot[c]) params.push_back(c);

    std::vector<ResidueClass> out;
    std::vector<std::uint64_t> digit(params.size(), 0), delta(nf, 0);
    for (;;) {
        for (std::size_t t = 0; t < params.size(); ++t) delta[params[t]] = digit[t];
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            std::uint64_t v = rows[i][nf];
            for (std::size_t t = 0; t < params.size(); ++t)
                v = submod(v, mulmod(rows[i][params[t]], digit[t], p_), p_);
            delta[pivot_col[i]] = v;
        }
        ResidueClass c;
        c.x = cls.x;
        c.k = k + 1;
        c.norm = cls.norm;
        for (int t = 0; t < nf; ++t) c.x[free[t]] += delta[t] * pk;
        out.push_back(std::move(c));
        std::size_t t = 0;
        while (t < digit.size() && ++digit[t] == p_) digit[t++] = 0;
        if (t == digit.size()) break;
    }
    return out;
}

std::optional<HenselInfo> ResidueSpace::hensel(const ResidueClass& cls) const {
    if (!has_eq_) return HenselInfo{-1, 0};
    std::optional<HenselInfo> best;
    for (int j = 0; j < nvars_; ++j) {
        std::uint64_t v = eq_.grad[j].eval(cls.x) % pow_[cls.k];
        if (v == 0) continue;
        int e = 0;
        while (v % p_ == 0) {
            v /= p_;
            ++e;
        }
        if (cls.k >= 2 * e + 1 && (!best || e < best->e)) best = HenselInfo{j, e};
    }
    return best;
}

ResidueClass ResidueSpace::truncate(const ResidueClass& cls, int prec) const {
    std::vector<std::uint64_t> y(cls.x);
    for (auto& v : y) v %= pow_.at(prec);
    auto n = normalise(y, prec);
    if (!n) throw Error(ErrorKind::Unsupported, "truncation lost primitivity");
    return *n;
}

std::optional<ResidueClass> ResidueSpace::normalise(std::span<const std::uint64_t> x, int k) const {
    const std::uint64_t m = pow_.at(k);
    int i0 = -1;
    for (int j = 0; j < nvars_; ++j)
        if (x[j] % p_ != 0) {
            i0 = j;
            break;
        }
    if (i0 < 0) return std::nullopt;
    // Multiply by the inverse of x[i0] mod p^k (Euler: phi(p^k) = p^{k-1}(p-1)).
    const std::uint64_t phi = m / p_ * (p_ - 1);
    const std::uint64_t inv = powmod(x[i0] % m, phi - 1, m);
    ResidueClass c;
    c.k = k;
    c.norm = i0;
    c.x.resize(nvars_);
    for (int j = 0; j < nvars_; ++j) c.x[j] = mulmod(x[j] % m, inv, m);
    return c;
}

}  // namespace orbarith
