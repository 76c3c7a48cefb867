#include "orbarith/orbifold.hpp"

#include <algorithm>
#include <sstream>

#include <omp.h>

#include "orbarith/errors.hpp"

namespace orbarith {

BigInt ProjPointQ::height() const {
    BigInt h = 0;
    for (const auto& c : coords)
        if (abs(c) > h) h = abs(c);
    return h;
}

std::string ProjPointQ::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? ":" : "") << coords[i];
    os << ']';
    return os.str();
}

ProjPointQ normalize_point(std::span<const BigInt> raw) {
    BigInt g = 0;
    for (const auto& c : raw) g = gcd_big(g, c);
    if (g == 0) throw Error(ErrorKind::ZeroVector, "zero coordinate vector");
    ProjPointQ P;
    P.coords.reserve(raw.size());
    int s = 0;
    for (const auto& c : raw) {
        if (s == 0 && c != 0) s = sgn(c);
        P.coords.push_back(BigInt(c / g));
    }
    if (s < 0)
        for (auto& c : P.coords) c = -c;
    return P;
}

ProjPointQ normalize_point(std::initializer_list<long> raw) {
    std::vector<BigInt> v;
    for (long c : raw) v.emplace_back(c);
    return normalize_point(v);
}

Weight Weight::finite(unsigned long m) {
    if (m < 1) throw Error(ErrorKind::InvalidModel, "weight must be >= 1");
    return Weight(m, false);
}

unsigned long Weight::value() const {
    if (inf_) throw Error(ErrorKind::Unsupported, "value() of infinite weight");
    return m_;
}

std::string Weight::to_string() const { return inf_ ? "inf" : std::to_string(m_); }

std::vector<std::string> OrbifoldModelZ::names() const {
    return var_names.empty() ? default_var_names(nvars()) : var_names;
}

namespace {

bool proportional(const Poly& a, const Poly& b) {
    if (a.terms().size() != b.terms().size()) return false;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    // a = (na/nb) b with the ratio fixed by the first term.
    const BigInt& na = ia->second;
    const BigInt& nb = ib->second;
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second * nb != ib->second * na) return false;
    }
    return true;
}

}  // namespace

void OrbifoldModelZ::validate() const {
    if (ambient_dim < 1) throw Error(ErrorKind::InvalidModel, "ambient dimension must be >= 1");
    if (!var_names.empty() && static_cast<int>(var_names.size()) != nvars())
        throw Error(ErrorKind::InvalidModel, "variable name count does not match dimension");
    for (const auto& e : ambient_equations) {
        if (e.nvars() != nvars()) throw Error(ErrorKind::InvalidModel, "equation arity mismatch");
        if (e.is_zero() || !e.is_homogeneous()) throw Error(ErrorKind::InvalidModel, "equation not homogeneous");
        if (e.content() != 1) throw Error(ErrorKind::InvalidModel, "equation content is not 1");
    }
    for (std::size_t i = 0; i < divisor.size(); ++i) {
        const Poly& f = divisor[i].f;
        if (f.nvars() != nvars()) throw Error(ErrorKind::InvalidModel, "divisor arity mismatch");
        if (f.is_zero() || !f.is_homogeneous() || f.is_constant())
            throw Error(ErrorKind::InvalidModel, "divisor component must be a nonconstant form");
        if (f.content() != 1) throw Error(ErrorKind::InvalidModel, "divisor component content is not 1");
        for (std::size_t j = 0; j < i; ++j)
            if (proportional(f, divisor[j].f))
                throw Error(ErrorKind::InvalidModel, "proportional divisor components");
    }
    for (const auto& p : excluded_places)
        if (!is_prime(p)) throw Error(ErrorKind::InvalidModel, "excluded place " + p.get_str() + " is not prime");
}

bool OrbifoldModelZ::on_ambient(const ProjPointQ& P) const {
    if (static_cast<int>(P.coords.size()) != nvars()) return false;
    for (const auto& e : ambient_equations)
        if (e.eval(P.coords) != 0) return false;
    return true;
}

ExtNat intersection_multiplicity(const ProjPointQ& P, const Poly& f, const BigInt& p) {
    return padic_valuation(f.eval(P.coords), p);
}

LocalClassification classify_multiplicities(const OrbifoldModelZ& M, std::vector<ExtNat> mult) {
    LocalClassification c;
    c.multiplicities = std::move(mult);
    bool integral = true, darmon = true, campana = true;
    // Σ n/m as a rational; infinite if some n is infinite.
    BigRat sum = 0;
    bool sum_inf = false;
    for (std::size_t i = 0; i < M.divisor.size(); ++i) {
        const Weight& w = M.divisor[i].weight;
        const ExtNat& n = c.multiplicities[i];
        if (w.is_infinite()) {
            if (n != ExtNat(0)) c.on_divisor_inf = true;
            continue;
        }
        const unsigned long m = w.value();
        if (m == 1) continue;
        if (n.is_infinite()) {
            c.strict = false;
            integral = false;
            sum_inf = true;
            continue;
        }
        const std::uint64_t nv = n.value();
        if (nv != 0) integral = false;
        if (nv % m != 0) darmon = false;
        if (nv != 0 && nv < m) campana = false;
        sum += BigRat(BigInt(static_cast<unsigned long>(nv)), BigInt(m));
    }
    sum.canonicalize();
    const bool weak = sum_inf || sum == 0 || sum >= 1;
    if (c.on_divisor_inf) {
        c.strict = false;
        return c;
    }
    c.integral = integral;
    c.darmon = darmon;
    c.campana = campana;
    c.weak_campana = weak;
    return c;
}

LocalClassification classify_local(const ProjPointQ& P, const OrbifoldModelZ& M, const BigInt& p) {
    if (!M.on_ambient(P)) throw Error(ErrorKind::PointNotOnAmbient, P.to_string());
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not prime");
    std::vector<ExtNat> mult;
    for (const auto& comp : M.divisor) mult.push_back(intersection_multiplicity(P, comp.f, p));
    return classify_multiplicities(M, std::move(mult));
}

GlobalClassification classify_global(const ProjPointQ& P, const OrbifoldModelZ& M) {
    if (!M.on_ambient(P)) throw Error(ErrorKind::PointNotOnAmbient, P.to_string());
    GlobalClassification g;
    std::vector<BigInt> values;
    std::set<BigInt> primes;
    for (const auto& comp : M.divisor) {
        values.push_back(comp.f.eval(P.coords));
        if (values.back() != 0)
            for (const auto& q : prime_divisors(values.back())) primes.insert(q);
    }
    std::vector<ExtNat> generic;
    for (const auto& v : values) generic.push_back(v == 0 ? ExtNat::infinity() : ExtNat(0));
    g.generic = classify_multiplicities(M, generic);

    auto fold = [&](const LocalClassification& c) {
        g.on_divisor_inf = g.on_divisor_inf || c.on_divisor_inf;
        g.strict = g.strict && c.strict;
        g.integral = g.integral && c.integral;
        g.darmon = g.darmon && c.darmon;
        g.campana = g.campana && c.campana;
        g.weak_campana = g.weak_campana && c.weak_campana;
    };
    fold(g.generic);
    for (const auto& q : primes) {
        if (M.excluded_places.count(q)) continue;
        g.relevant_primes.push_back(q);
        std::vector<ExtNat> mult;
        for (const auto& v : values) mult.push_back(v == 0 ? ExtNat::infinity() : ExtNat(valuation_unchecked(v, q)));
        auto c = classify_multiplicities(M, std::move(mult));
        fold(c);
        g.per_prime.emplace(q, std::move(c));
    }
    return g;
}

const char* to_string(PointFlag f) {
    switch (f) {
        case PointFlag::Any: return "any";
        case PointFlag::Integral: return "integral";
        case PointFlag::Darmon: return "darmon";
        case PointFlag::Campana: return "campana";
        case PointFlag::WeakCampana: return "weak-campana";
    }
    return "?";
}

PointFlag parse_point_flag(const std::string& s) {
    if (s == "any") return PointFlag::Any;
    if (s == "integral") return PointFlag::Integral;
    if (s == "darmon") return PointFlag::Darmon;
    if (s == "campana") return PointFlag::Campana;
    if (s == "weak-campana" || s == "weak_campana") return PointFlag::WeakCampana;
    throw Error(ErrorKind::ParseError, "unknown point flag '" + s + "'");
}

bool flag_holds(const GlobalClassification& g, PointFlag f) {
    switch (f) {
        case PointFlag::Any: return true;
        case PointFlag::Integral: return g.integral;
        case PointFlag::Darmon: return g.darmon;
        case PointFlag::Campana: return g.campana;
        case PointFlag::WeakCampana: return g.weak_campana;
    }
    return false;
}

namespace {

bool matches_target(const ProjPointQ& P, const ResidueTarget& t) {
    const BigInt m = pow_big(t.p, t.k);
    auto md = [&](const BigInt& v) {
        BigInt r = v % m;
        if (r < 0) r += m;
        return r;
    };
    int i0 = -1;
    for (std::size_t i = 0; i < t.residue.size(); ++i)
        if (md(t.residue[i]) % t.p != 0) {
            i0 = static_cast<int>(i);
            break;
        }
    if (i0 < 0 || t.residue.size() != P.coords.size()) return false;
    if (md(P.coords[i0]) % t.p == 0) return false;
    for (std::size_t i = 0; i < P.coords.size(); ++i)
        if (md(P.coords[i] * t.residue[i0] - t.residue[i] * P.coords[i0]) != 0) return false;
    return true;
}

// The coefficient of var^d in f, as a polynomial in the remaining variables.
Poly coefficient_in(const Poly& f, int var, int d) {
    Poly out(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[var] != d) continue;
        Exponents e2 = e;
        e2[var] = 0;
        out += Poly::monomial(e2, c);
    }
    return out;
}

bool is_coordinate_form(const Poly& f, int* var) {
    if (f.terms().size() != 1) return false;
    const auto& [e, c] = *f.terms().begin();
    if (abs(c) != 1) return false;
    int idx = -1, deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        deg += e[i];
        if (e[i]) idx = static_cast<int>(i);
    }
    if (deg != 1) return false;
    *var = idx;
    return true;
}

struct SearchPlan {
    int n = 0;
    int solve_var = -1;  // -1: enumerate every coordinate
    std::vector<Poly> coeff;  // coefficients of the solve variable, degree <= 2
    std::vector<int> fixed;   // coordinates pinned to 1
    std::vector<int> free;
};

SearchPlan make_plan(const OrbifoldModelZ& M, const SearchOptions& opts) {
    SearchPlan plan;
    plan.n = M.nvars();
    if (opts.flag == PointFlag::Integral && M.excluded_places.empty()) {
        // An integral point has every reduced component a unit; a coordinate component
        // must then equal ±1, and the sign can be absorbed by the projective scalar.
        for (const auto& comp : M.divisor) {
            if (!comp.weight.is_infinite() && comp.weight.value() < 2) continue;
            int v;
            if (is_coordinate_form(comp.f, &v) && plan.fixed.empty()) plan.fixed.push_back(v);
        }
    }
    if (!M.ambient_equations.empty()) {
        const Poly& f = M.ambient_equations[0];
        int best = -1, best_deg = 99;
        for (int j = 0; j < plan.n; ++j) {
            if (std::find(plan.fixed.begin(), plan.fixed.end(), j) != plan.fixed.end()) continue;
            int d = f.degree_in(j);
            if (d >= 1 && d <= 2 && d <= best_deg) {
                best = j;
                best_deg = d;
            }
        }
        if (best >= 0) {
            plan.solve_var = best;
            for (int d = 0; d <= best_deg; ++d) plan.coeff.push_back(coefficient_in(f, best, d));
        }
    }
    for (int j = 0; j < plan.n; ++j)
        if (j != plan.solve_var && std::find(plan.fixed.begin(), plan.fixed.end(), j) == plan.fixed.end())
            plan.free.push_back(j);
    return plan;
}

// Candidate completions of x (free and fixed coordinates set) along the solve variable.
void complete(const SearchPlan& plan, std::vector<BigInt>& x, const BigInt& H, std::vector<std::vector<BigInt>>& out) {
    if (plan.solve_var < 0) {
        out.push_back(x);
        return;
    }
    const int s = plan.solve_var;
    x[s] = 0;
    BigInt c0 = plan.coeff[0].eval(x);
    BigInt c1 = plan.coeff.size() > 1 ? plan.coeff[1].eval(x) : BigInt(0);
    BigInt c2 = plan.coeff.size() > 2 ? plan.coeff[2].eval(x) : BigInt(0);
    auto push = [&](const BigInt& r) {
        if (abs(r) > H) return;
        x[s] = r;
        out.push_back(x);
    };
    if (c2 == 0) {
        if (c1 == 0) {
            if (c0 != 0) return;
            for (BigInt r = -H; r <= H; ++r) push(r);
            return;
        }
        if (c0 % c1 == 0) push(BigInt(-c0 / c1));
        return;
    }
    BigInt disc = c1 * c1 - 4 * c2 * c0;
    BigInt root;
    if (!is_square(disc, &root)) return;
    BigInt den = 2 * c2;
    for (int sgn_ : {1, -1}) {
        BigInt num = -c1 + sgn_ * root;
        if (num % den == 0) push(BigInt(num / den));
        if (root == 0) break;
    }
}

bool keep(const OrbifoldModelZ& M, const SearchOptions& opts, const std::vector<BigInt>& raw, ProjPointQ* out) {
    BigInt g = 0;
    for (const auto& c : raw) g = gcd_big(g, c);
    if (g != 1) return false;  // zero, or a multiple of a vector found elsewhere in the box
    ProjPointQ P = normalize_point(raw);
    if (!M.on_ambient(P)) return false;
    for (const auto& t : opts.targets)
        if (!matches_target(P, t)) return false;
    if (opts.strict_only)
        for (const auto& comp : M.divisor)
            if (comp.f.eval(P.coords) == 0) return false;
    if (opts.flag != PointFlag::Any && !flag_holds(classify_global(P, M), opts.flag)) return false;
    *out = std::move(P);
    return true;
}

void scan_slice(const OrbifoldModelZ& M, const SearchOptions& opts, const SearchPlan& plan, long first,
                std::vector<ProjPointQ>& found) {
    const long H = static_cast<long>(opts.height);
    const BigInt HB(H);
    std::vector<BigInt> x(plan.n, BigInt(0));
    for (int j : plan.fixed) x[j] = 1;
    const std::size_t nf = plan.free.size();
    std::vector<long> digit(nf, -H);
    if (nf > 0) digit[0] = first;
    std::vector<std::vector<BigInt>> cands;
    for (;;) {
        for (std::size_t t = 0; t < nf; ++t) x[plan.free[t]] = digit[t];
        cands.clear();
        complete(plan, x, HB, cands);
        for (const auto& c : cands) {
            ProjPointQ P;
            if (keep(M, opts, c, &P)) found.push_back(std::move(P));
        }
        std::size_t t = 1;
        while (t < nf && ++digit[t] > H) digit[t++] = -H;
        if (t >= nf) break;
    }
}

bool point_less(const ProjPointQ& a, const ProjPointQ& b) {
    BigInt ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.coords < b.coords;
}

std::vector<ProjPointQ> finish(std::vector<ProjPointQ> pts) {
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

std::vector<ProjPointQ> search_points_serial(const OrbifoldModelZ& M, const SearchOptions& opts) {
    M.validate();
    SearchPlan plan = make_plan(M, opts);
    std::vector<ProjPointQ> found;
    const long H = static_cast<long>(opts.height);
    if (plan.free.empty()) {
        scan_slice(M, opts, plan, 0, found);
    } else {
        for (long a = -H; a <= H; ++a) scan_slice(M, opts, plan, a, found);
    }
    return finish(std::move(found));
}

std::vector<ProjPointQ> search_points(const OrbifoldModelZ& M, const SearchOptions& opts) {
    M.validate();
    SearchPlan plan = make_plan(M, opts);
    if (plan.free.empty()) return search_points_serial(M, opts);
    const long H = static_cast<long>(opts.height);
    const long slices = 2 * H + 1;
    std::vector<std::vector<ProjPointQ>> per(slices);
    const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long i = 0; i < slices; ++i) scan_slice(M, opts, plan, i - H, per[i]);
    std::vector<ProjPointQ> found;
    for (auto& v : per)
        for (auto& P : v) found.push_back(std::move(P));
    return finish(std::move(found));
}

}  // namespace orbarith
