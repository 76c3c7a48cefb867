#include "orbarith/localfields.hpp"

#include <algorithm>

#include "orbarith/arith.hpp"
#include "orbarith/errors.hpp"
#include "orbarith/residue.hpp"

namespace orbarith {

Place Place::finite(const BigInt& p) {
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not prime");
    Place v;
    v.real_ = false;
    v.p_ = p;
    return v;
}

std::uint64_t Place::prime_u64() const {
    if (real_) throw Error(ErrorKind::Unsupported, "real place has no prime");
    return to_u64(p_);
}

std::string Place::to_string() const { return real_ ? "inf" : p_.get_str(); }

const char* to_string(Status s) {
    switch (s) {
        case Status::Yes: return "YES";
        case Status::No: return "NO";
        case Status::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

// a = p^alpha · u with p ∤ u.
std::pair<unsigned long, BigInt> split(const BigInt& a, const BigInt& p) {
    BigInt u;
    unsigned long e = mpz_remove(u.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return {e, u};
}

int eps2(const BigInt& u) { return mod_u64(u, 4) == 3 ? 1 : 0; }  // (u-1)/2 mod 2
int omega2(const BigInt& u) {                                      // (u²-1)/8 mod 2
    auto r = mod_u64(u, 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const BigInt& a, const BigInt& b, const Place& v) {
    if (a == 0 || b == 0) throw Error(ErrorKind::ZeroArgument, "Hilbert symbol of zero");
    if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    const BigInt& p = v.prime();
    auto [al, u] = split(a, p);
    auto [be, w] = split(b, p);
    if (p == 2) {
        int e = eps2(u) * eps2(w) + static_cast<int>(al % 2) * omega2(w) + static_cast<int>(be % 2) * omega2(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    if ((al % 2) && (be % 2) && mod_u64(p, 4) == 3) s = -s;
    if (be % 2) s *= mpz_legendre(BigInt(u % p + p).get_mpz_t(), p.get_mpz_t());
    if (al % 2) s *= mpz_legendre(BigInt(w % p + p).get_mpz_t(), p.get_mpz_t());
    return s;
}

int hilbert_symbol(const BigRat& a, const BigRat& b, const Place& v) {
    if (a == 0 || b == 0) throw Error(ErrorKind::ZeroArgument, "Hilbert symbol of zero");
    return hilbert_symbol(BigInt(a.get_num() * a.get_den()), BigInt(b.get_num() * b.get_den()), v);
}

bool is_local_square(const BigInt& a, const Place& v) {
    if (a == 0) return true;
    if (v.is_real()) return sgn(a) > 0;
    auto [e, u] = split(a, v.prime());
    if (e % 2) return false;
    if (v.prime() == 2) return mod_u64(u, 8) == 1;
    return mpz_legendre(BigInt(u % v.prime() + v.prime()).get_mpz_t(), v.prime().get_mpz_t()) == 1;
}

bool is_isotropic_local(std::span<const BigInt> diag, const Place& v) {
    if (diag.size() != 3 && diag.size() != 4)
        throw Error(ErrorKind::UnsupportedRank, "rank " + std::to_string(diag.size()));
    for (const auto& a : diag)
        if (a == 0) throw Error(ErrorKind::ZeroArgument, "zero diagonal entry");
    BigInt d = 1;
    int eps = 1;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        d *= diag[i];
        for (std::size_t j = i + 1; j < diag.size(); ++j) eps *= hilbert_symbol(diag[i], diag[j], v);
    }
    if (diag.size() == 3) return hilbert_symbol(BigInt(-1), BigInt(-d), v) == eps;
    if (!is_local_square(d, v)) return true;
    return eps == hilbert_symbol(BigInt(-1), BigInt(-1), v);
}

bool real_points_exist(std::span<const BigInt> diag, const BigInt& target) {
    if (target == 0) return true;
    for (const auto& a : diag)
        if (sgn(a) == sgn(target)) return true;
    return false;
}

std::optional<int> quadric_exhaustion_bound(const Poly& f, const BigInt& p) {
    if (f.total_degree() != 2 || !f.is_homogeneous()) return std::nullopt;
    const int n = f.nvars();
    std::vector<std::vector<BigInt>> h(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i) {
        Poly di = f.derivative(i);
        for (int j = 0; j < n; ++j) h[i][j] = di.derivative(j).constant_term();
    }
    // Bareiss fraction-free elimination.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && h[piv][k] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != k) {
            std::swap(h[piv], h[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) h[i][j] = (h[i][j] * h[k][k] - h[i][k] * h[k][j]) / prev;
            h[i][k] = 0;
        }
        prev = h[k][k];
    }
    BigInt det = h[n - 1][n - 1] * sign;
    if (det == 0) return std::nullopt;
    return 2 * static_cast<int>(valuation_unchecked(det, p)) + 1;
}

SolubilityVerdict zp_points_on_hypersurface(const Poly& f, const BigInt& p, const ZpOptions& opts) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "zero polynomial");
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not prime");
    const std::uint64_t pu = to_u64(p);
    auto bound = quadric_exhaustion_bound(f, p);
    int depth = opts.max_depth;
    if (bound) depth = std::max(depth, *bound);

    std::vector<Poly> eqs{f};
    ResidueSpace sp(f.nvars(), eqs, pu, depth);
    std::vector<CompiledForm> units;
    for (const auto& g : opts.unit_forms) units.push_back(sp.compile(g));

    std::vector<ResidueClass> stack;
    for (auto& c : sp.level_one()) {
        bool ok = true;
        for (const auto& u : units)
            if (sp.value(u, c, 1) == 0) ok = false;
        if (ok) stack.push_back(std::move(c));
    }
    std::reverse(stack.begin(), stack.end());

    SolubilityVerdict out;
    bool hit_max = false, pruned = false;
    std::uint64_t nodes = 0;
    while (!stack.empty()) {
        ResidueClass cls = std::move(stack.back());
        stack.pop_back();
        out.depth_reached = std::max(out.depth_reached, cls.k);
        if (++nodes > opts.node_budget) {
            hit_max = true;
            break;
        }
        if (auto h = sp.hensel(cls)) {
            HenselCertificate cert;
            cert.solution.modulus_exponent = cls.k;
            cert.solution.prime = p;
            for (auto v : cls.x) cert.solution.coords.emplace_back(static_cast<unsigned long>(v));
            cert.solution.primitive = true;
            cert.derivative_valuation = h->e;
            cert.witness_precision = cls.k;
            cert.variable = h->var;
            out.status = Status::Yes;
            out.certificate = std::move(cert);
            return out;
        }
        if (bound && cls.k >= *bound) {
            pruned = true;
            continue;
        }
        if (cls.k >= sp.max_depth()) {
            hit_max = true;
            continue;
        }
        auto kids = sp.children(cls);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
    }
    if (hit_max) {
        out.status = Status::Inconclusive;
        return out;
    }
    out.status = Status::No;
    out.exhaustion_precision = out.depth_reached;
    out.bound_certified = pruned;
    return out;
}

}  // namespace orbarith
