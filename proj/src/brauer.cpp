#include "orbarith/brauer.hpp"

#include <algorithm>
#include <set>

#include <omp.h>

#include "orbarith/errors.hpp"
#include "orbarith/residue.hpp"

namespace orbarith {

void QuaternionClass::validate(int nvars) const {
    if (reps.empty()) throw Error(ErrorKind::InvalidModel, "Brauer class needs a representative");
    if (d == 0) throw Error(ErrorKind::InvalidModel, "class constant must be nonzero");
    auto check_pair = [&](const Poly& n, const Poly& dd) {
        if (n.nvars() != nvars || dd.nvars() != nvars) throw Error(ErrorKind::InvalidModel, "representative arity");
        if (n.is_zero() || dd.is_zero()) throw Error(ErrorKind::InvalidModel, "zero representative");
        if (!n.is_homogeneous() || !dd.is_homogeneous() || n.total_degree() != dd.total_degree())
            throw Error(ErrorKind::InvalidModel, "representative is not a ratio of forms of equal degree");
    };
    for (const auto& r : reps) {
        check_pair(r.num, r.den);
        if (r.second_num.has_value() != r.second_den.has_value())
            throw Error(ErrorKind::InvalidModel, "second slot needs numerator and denominator");
        if (r.second_num) check_pair(*r.second_num, *r.second_den);
    }
}

bool QuaternionClass::constant_second_slot() const {
    for (const auto& r : reps)
        if (r.second_num) return false;
    return true;
}

namespace {

// (a, b) of the representative at P, or nullopt if some entry vanishes there.
std::optional<std::pair<BigInt, BigInt>> rep_args(const QuaternionClass& A, const QuaternionRep& r,
                                                  const ProjPointQ& P) {
    BigInt n1 = r.num.eval(P.coords), d1 = r.den.eval(P.coords);
    if (n1 == 0 || d1 == 0) return std::nullopt;
    BigInt b = A.d;
    if (r.second_num) {
        BigInt n2 = r.second_num->eval(P.coords), d2 = r.second_den->eval(P.coords);
        if (n2 == 0 || d2 == 0) return std::nullopt;
        b = n2 * d2;
    }
    return std::make_pair(BigInt(n1 * d1), b);
}

}  // namespace

InvariantValue invariant_at_point(const QuaternionClass& A, const ProjPointQ& P, const Place& v) {
    for (const auto& r : A.reps) {
        if (auto ab = rep_args(A, r, P)) return {hilbert_symbol(ab->first, ab->second, v) == 1 ? 0 : 1};
    }
    throw Error(ErrorKind::AllRepresentativesVanish, P.to_string());
}

int global_invariant_sum(const QuaternionClass& A, const ProjPointQ& P) {
    for (const auto& r : A.reps) {
        auto ab = rep_args(A, r, P);
        if (!ab) continue;
        std::set<BigInt> primes{BigInt(2)};
        for (const auto& q : prime_divisors(ab->first)) primes.insert(q);
        for (const auto& q : prime_divisors(ab->second)) primes.insert(q);
        int s = hilbert_symbol(ab->first, ab->second, Place::real()) == 1 ? 0 : 1;
        for (const auto& q : primes) s += hilbert_symbol(ab->first, ab->second, Place::finite(q)) == 1 ? 0 : 1;
        return s % 2;
    }
    throw Error(ErrorKind::AllRepresentativesVanish, P.to_string());
}

Mode Mode::darmon(unsigned long m) {
    if (m < 2) throw Error(ErrorKind::Unsupported, "Darmon mode needs weight >= 2");
    return {ModeKind::Darmon, m};
}

Mode Mode::campana(unsigned long m) {
    if (m < 2) throw Error(ErrorKind::Unsupported, "Campana mode needs weight >= 2");
    return {ModeKind::Campana, m};
}

std::string Mode::to_string() const {
    switch (kind) {
        case ModeKind::Integral: return "integral";
        case ModeKind::Darmon: return "darmon(" + std::to_string(m) + ")";
        case ModeKind::Campana: return "campana(" + std::to_string(m) + ")";
    }
    return "?";
}

Mode parse_mode(const std::string& kind, unsigned long m) {
    if (kind == "integral") return Mode::integral();
    if (kind == "darmon") return Mode::darmon(m);
    if (kind == "campana") return Mode::campana(m);
    throw Error(ErrorKind::ParseError, "unknown mode '" + kind + "'");
}

std::string InvariantProfile::achieved_string() const {
    if (empty) return "EMPTY";
    std::string s = "{";
    if (achieved[0]) s += "0";
    if (achieved[1]) s += achieved[0] ? ", 1/2" : "1/2";
    return s + "}";
}

namespace {

// A representative polynomial compiled for the residue tree, together with what is known
// about it when it is c·D^j for a constrained divisor component D.
struct RepForm {
    CompiledForm form;
    int comp = -1;  // index into Profiler::cons, -1 if not a power of one
    int j = 0;
    long vc = 0;  // v_p(c)
};

struct CompiledRep {
    RepForm n1, d1;
    std::optional<RepForm> n2, d2;
};

enum class CompState { Ok, Reject, Pending };

class Profiler {
public:
    Profiler(const QuaternionClass& A, const OrbifoldModelZ& M, std::uint64_t p, const Mode& mode, int depth)
        : A_(A), p_(p), pb_(static_cast<unsigned long>(p)), mode_(mode),
          sp_(M.nvars(), M.ambient_equations, p, depth) {
        for (const auto& comp : M.divisor) {
            if (!comp.weight.is_infinite() && comp.weight.value() == 1) continue;
            cons_.push_back(sp_.compile(comp.f));
            cons_poly_.push_back(comp.f);
        }
        d_square_ = is_local_square(A.d, Place::finite(pb_));
        {
            auto [e, u] = split(A.d);
            d_val_even_ = e % 2 == 0;
            d_unit_square_mod_p_ = p != 2 && mpz_legendre(BigInt(u % pb_ + pb_).get_mpz_t(), pb_.get_mpz_t()) == 1;
        }
        for (const auto& r : A.reps) {
            CompiledRep c{compile_rep(r.num), compile_rep(r.den), std::nullopt, std::nullopt};
            if (r.second_num) {
                c.n2 = compile_rep(*r.second_num);
                c.d2 = compile_rep(*r.second_den);
            }
            reps_.push_back(std::move(c));
        }
    }

    const ResidueSpace& space() const { return sp_; }

    // Mode status of one component at the given precision.
    CompState comp_state(std::size_t a, const ResidueClass& cls, int prec, int* e_out) const {
        int e = sp_.valuation(cons_[a], cls, prec);
        bool det = e < prec;
        *e_out = e;
        switch (mode_.kind) {
            case ModeKind::Integral: return det && e == 0 ? CompState::Ok : CompState::Reject;
            case ModeKind::Darmon:
                if (det) return e % static_cast<int>(mode_.m) == 0 ? CompState::Ok : CompState::Reject;
                return CompState::Pending;
            case ModeKind::Campana:
                if (det) return (e == 0 || e >= static_cast<int>(mode_.m)) ? CompState::Ok : CompState::Reject;
                return prec >= static_cast<int>(mode_.m) ? CompState::Ok : CompState::Pending;
        }
        return CompState::Reject;
    }

    // Overall mode status; fills the components whose valuation k is not allowed.
    CompState mode_state(const ResidueClass& cls, int prec, std::vector<const CompiledForm*>* forbid_k) const {
        CompState s = CompState::Ok;
        for (std::size_t a = 0; a < cons_.size(); ++a) {
            int e;
            CompState c = comp_state(a, cls, prec, &e);
            if (c == CompState::Reject) return CompState::Reject;
            if (c == CompState::Pending) {
                s = CompState::Pending;
                if (forbid_k && !valuation_allowed(prec)) forbid_k->push_back(&cons_[a]);
            }
        }
        return s;
    }

    // Possible invariant values (bit 0: value 0, bit 1: value 1/2) on the points of the class
    // that agree with it modulo p^prec.
    unsigned value_set(const ResidueClass& cls, int prec) const {
        if (d_square_ && A_.constant_second_slot()) return 1u;
        unsigned all = 3u;
        for (const auto& r : reps_) {
            all &= rep_set(r, cls, prec);
            if (all == 0) return 3u;  // representatives disagree: give up on this class
        }
        return all;
    }

private:
    std::pair<unsigned long, BigInt> split(const BigInt& a) const {
        BigInt u;
        unsigned long e = mpz_remove(u.get_mpz_t(), a.get_mpz_t(), pb_.get_mpz_t());
        return {e, u};
    }

    RepForm compile_rep(const Poly& f) {
        RepForm rf;
        rf.form = sp_.compile(f);
        for (std::size_t a = 0; a < cons_poly_.size(); ++a) {
            int j = f.power_of(cons_poly_[a]);
            if (j == 0) continue;
            Poly bj = cons_poly_[a].pow(static_cast<unsigned>(j));
            const auto& [e0, c0] = *f.terms().begin();
            const BigInt& b0 = bj.terms().at(e0);
            rf.comp = static_cast<int>(a);
            rf.j = j;
            rf.vc = static_cast<long>(valuation_unchecked(c0, pb_)) - static_cast<long>(valuation_unchecked(b0, pb_));
            break;
        }
        return rf;
    }

    bool valuation_allowed(int e) const {
        switch (mode_.kind) {
            case ModeKind::Integral: return e == 0;
            case ModeKind::Darmon: return e % static_cast<int>(mode_.m) == 0;
            case ModeKind::Campana: return e == 0 || e >= static_cast<int>(mode_.m);
        }
        return false;
    }

    // Parities (bit 0 even, bit 1 odd) a component valuation can take given e >= lower.
    unsigned comp_parities(std::size_t a, const ResidueClass& cls, int prec) const {
        int e = sp_.valuation(cons_[a], cls, prec);
        if (e < prec) return e % 2 ? 2u : 1u;
        if (mode_.kind == ModeKind::Darmon && mode_.m % 2 == 0) return 1u;
        return 3u;
    }

    unsigned parities(const RepForm& f, const ResidueClass& cls, int prec) const {
        int v = sp_.valuation(f.form, cls, prec);
        if (v < prec) return v % 2 ? 2u : 1u;
        if (f.comp < 0) return 3u;
        unsigned pe = comp_parities(static_cast<std::size_t>(f.comp), cls, prec);
        // v = vc + j·e
        unsigned out = 0;
        for (int par = 0; par < 2; ++par) {
            if (!(pe & (1u << par))) continue;
            long v2 = f.vc + static_cast<long>(f.j) * par;
            out |= (v2 % 2 + 2) % 2 ? 2u : 1u;
        }
        return out;
    }

    unsigned rep_set(const CompiledRep& r, const ResidueClass& cls, int prec) const {
        // Exact evaluation when every entry's valuation and enough of its unit part is known.
        const int need = p_ == 2 ? 3 : 1;
        auto known = [&](const RepForm& f, BigInt* val) {
            std::uint64_t x = sp_.value(f.form, cls, prec);
            if (x == 0) return false;
            int v = sp_.valuation(f.form, cls, prec);
            if (prec - v < need) return false;
            *val = BigInt(static_cast<unsigned long>(x));
            return true;
        };
        BigInt a1, a2, b1, b2;
        bool exact = known(r.n1, &a1) && known(r.d1, &a2);
        if (exact && r.n2) exact = known(*r.n2, &b1) && known(*r.d2, &b2);
        if (exact) {
            BigInt b = r.n2 ? BigInt(b1 * b2) : A_.d;
            return hilbert_symbol(BigInt(a1 * a2), b, Place::finite(pb_)) == 1 ? 1u : 2u;
        }
        // Odd p, constant second slot of even valuation: the symbol is (d0/p)^{v(g)}.
        if (p_ != 2 && !r.n2 && d_val_even_) {
            if (d_unit_square_mod_p_) return 1u;
            unsigned pn = parities(r.n1, cls, prec), pd = parities(r.d1, cls, prec);
            unsigned out = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((pn & (1u << a)) && (pd & (1u << b))) out |= ((a + b) % 2) ? 2u : 1u;
            return out;
        }
        return 3u;
    }

    const QuaternionClass& A_;
    std::uint64_t p_;
    BigInt pb_;
    Mode mode_;
    ResidueSpace sp_;
    std::vector<CompiledForm> cons_;
    std::vector<Poly> cons_poly_;
    std::vector<CompiledRep> reps_;
    bool d_square_ = false;
    bool d_val_even_ = false;
    bool d_unit_square_mod_p_ = false;
};

ResidueClassSolution to_solution(const ResidueClass& c, std::uint64_t p) {
    ResidueClassSolution s;
    s.modulus_exponent = c.k;
    s.prime = BigInt(static_cast<unsigned long>(p));
    for (auto v : c.x) s.coords.emplace_back(static_cast<unsigned long>(v));
    s.primitive = true;
    return s;
}

InvariantProfile real_profile(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode,
                              const ProfileOptions& opts) {
    InvariantProfile prof;
    prof.place = Place::real();
    prof.mode = mode;
    if (A.constant_second_slot() && A.d > 0) {
        // (g, d)_∞ = 1 for d > 0; only the existence of a real point off the divisor is needed.
        prof.achieved[0] = true;
        return prof;
    }
    prof.exhaustive = false;
    SearchOptions so;
    so.height = opts.real_height;
    so.strict_only = true;
    so.jobs = 1;
    for (const auto& P : search_points_serial(M, so)) {
        try {
            auto v = invariant_at_point(A, P, Place::real());
            if (!prof.achieved[v.half]) prof.real_samples.push_back(P);
            prof.achieved[v.half] = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::AllRepresentativesVanish) throw;
        }
        if (prof.both()) break;
    }
    if (!prof.achieved[0] && !prof.achieved[1]) prof.undecided = 1;
    return prof;
}

}  // namespace

InvariantProfile invariant_profile(const QuaternionClass& A, const OrbifoldModelZ& M, const Place& v, const Mode& mode,
                                   const ProfileOptions& opts) {
    M.validate();
    A.validate(M.nvars());
    if (v.is_real()) return real_profile(A, M, mode, opts);
    if (M.ambient_equations.size() > 1)
        throw Error(ErrorKind::Unsupported, "profiles support models with at most one equation");
    const std::uint64_t p = v.prime_u64();
    const int depth = opts.max_depth > 0 ? opts.max_depth : (p <= 5 ? 12 : 6);
    Profiler pr(A, M, p, mode, depth);
    const ResidueSpace& sp = pr.space();

    InvariantProfile prof;
    prof.place = v;
    prof.mode = mode;

    // Depth-first search below each level-one class, with a per-class node allowance that
    // grows geometrically: a class whose subtree explodes (e.g. around a point singular mod p)
    // cannot starve the others, and a deep witness costs one path.
    // Roots meeting the divisor mod p go first: they are few, and they carry the values
    // that the generic roots cannot reach.
    std::vector<ResidueClass> roots = sp.level_one();
    std::stable_partition(roots.begin(), roots.end(), [&](const ResidueClass& c) {
        return pr.mode_state(c, c.k, nullptr) == CompState::Pending;
    });
    std::vector<char> done(roots.size(), 0);
    std::vector<std::uint64_t> undecided(roots.size(), 0);
    std::uint64_t nodes = 0;
    std::vector<const CompiledForm*> forbid;
    std::vector<ResidueClass> stack;
    auto reach = [&] { return (prof.achieved[0] ? 1u : 0u) | (prof.achieved[1] ? 2u : 0u); };

    // Returns false when the allowance ran out before the subtree was finished.
    auto explore = [&](std::size_t r, std::uint64_t allowance) {
        stack.assign(1, roots[r]);
        std::uint64_t used = 0, undec = 0;
        while (!stack.empty()) {
            if (opts.stop_when_both && prof.both()) return true;
            if (++used > allowance) return false;
            ++nodes;
            ResidueClass cls = std::move(stack.back());
            stack.pop_back();
            prof.depth_used = std::max(prof.depth_used, cls.k);
            forbid.clear();
            if (pr.mode_state(cls, cls.k, &forbid) == CompState::Reject) continue;
            const unsigned S = pr.value_set(cls, cls.k);
            if ((S & ~reach()) == 0) continue;
            if (auto h = sp.hensel(cls)) {
                const int kp = cls.k - h->e;
                if (kp >= 1 && pr.mode_state(cls, kp, nullptr) == CompState::Ok) {
                    unsigned Sp = pr.value_set(cls, kp);
                    if (Sp == 1u || Sp == 2u) {
                        int half = Sp == 2u ? 1 : 0;
                        if (!prof.achieved[half]) {
                            prof.achieved[half] = true;
                            prof.witnesses.push_back({{half}, to_solution(cls, p), h->e, h->var});
                        }
                        if ((S & ~reach()) == 0) continue;
                    }
                }
            }
            if (cls.k >= sp.max_depth()) {
                ++undec;
                continue;
            }
            // Children that cannot add a value are dropped before they cost any allowance.
            // Of the rest, those already fixed to a single new value go on top, and the ones
            // still chasing a deeper divisor valuation wait underneath.
            auto kids = sp.children(cls, forbid);
            nodes += kids.size();
            std::vector<ResidueClass> tier[3];
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
                CompState st = pr.mode_state(*it, it->k, nullptr);
                if (st == CompState::Reject) continue;
                const unsigned Sk = pr.value_set(*it, it->k);
                if ((Sk & ~reach()) == 0) continue;
                int t = st == CompState::Pending ? 0 : (Sk == 3u ? 1 : 2);
                tier[t].push_back(std::move(*it));
            }
            for (auto& ti : tier)
                for (auto& c : ti) stack.push_back(std::move(c));
        }
        undecided[r] = undec;
        return true;
    };

    std::uint64_t allowance = 64;
    for (;;) {
        bool pending = false;
        for (std::size_t r = 0; r < roots.size(); ++r) {
            if (done[r]) continue;
            if (opts.stop_when_both && prof.both()) break;
            if (explore(r, allowance))
                done[r] = 1;
            else
                pending = true;
        }
        if (opts.stop_when_both && prof.both()) break;
        if (!pending) break;
        if (nodes > opts.node_budget) {
            // Unfinished subtrees count as undecided.
            for (std::size_t r = 0; r < roots.size(); ++r)
                if (!done[r]) undecided[r] = std::max<std::uint64_t>(undecided[r], 1);
            break;
        }
        allowance *= 4;
    }
    if (!(opts.stop_when_both && prof.both()))
        for (auto u : undecided) prof.undecided += u;
    prof.empty = !prof.achieved[0] && !prof.achieved[1] && prof.undecided == 0;
    return prof;
}

std::vector<BigInt> bad_primes(const QuaternionClass& A, const OrbifoldModelZ& M) {
    std::set<BigInt> s{BigInt(2)};
    auto add = [&](const BigInt& c) {
        if (c == 0) return;
        for (const auto& q : prime_divisors(c)) s.insert(q);
    };
    auto add_poly = [&](const Poly& f) {
        for (const auto& [e, c] : f.terms()) add(c);
    };
    add(A.d);
    for (const auto& e : M.ambient_equations) add_poly(e);
    for (const auto& c : M.divisor) add_poly(c.f);
    for (const auto& r : A.reps) {
        add_poly(r.num);
        add_poly(r.den);
        if (r.second_num) {
            add_poly(*r.second_num);
            add_poly(*r.second_den);
        }
    }
    for (const auto& q : M.excluded_places) s.erase(q);
    return {s.begin(), s.end()};
}

ObstructionReport adelic_obstruction(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode,
                                     const ObstructionOptions& opts) {
    M.validate();
    A.validate(M.nvars());
    ObstructionReport rep;
    rep.mode = mode;
    rep.prime_bound = opts.prime_bound;
    std::set<BigInt> bad;
    for (const auto& q : bad_primes(A, M)) bad.insert(q);
    for (const auto& q : opts.extra_bad_primes) {
        if (!is_prime(q)) throw Error(ErrorKind::NonPrimeModulus, q.get_str() + " is not prime");
        if (!M.excluded_places.count(q)) bad.insert(q);
    }
    rep.bad_primes.assign(bad.begin(), bad.end());

    std::vector<Place> places{Place::real()};
    std::set<BigInt> finite = bad;
    for (std::uint64_t q = 2; q <= opts.prime_bound; ++q)
        if (is_prime(q) && !M.excluded_places.count(BigInt(static_cast<unsigned long>(q))))
            finite.insert(BigInt(static_cast<unsigned long>(q)));
    for (const auto& q : finite) places.push_back(Place::finite(q));

    rep.profiles.resize(places.size());
    const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
    std::vector<std::string> errors(places.size());
    ProfileOptions po = opts.profile;
    po.stop_when_both = true;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::size_t i = 0; i < places.size(); ++i) {
        try {
            rep.profiles[i] = invariant_profile(A, M, places[i], mode, po);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < places.size(); ++i)
        if (!errors[i].empty()) throw Error(ErrorKind::Inconclusive, "place " + places[i].to_string() + ": " + errors[i]);

    rep.assumptions.push_back("primes above " + std::to_string(opts.prime_bound) +
                              " outside the bad set are assigned {0}");
    for (const auto& pf : rep.profiles)
        if (!pf.exhaustive)
            rep.assumptions.push_back("place " + pf.place.to_string() + " profile sampled from rational points");

    // Obstruction: no choice of one value per place sums to 0.
    int forced = 0;
    std::optional<std::size_t> free_place;
    for (std::size_t i = 0; i < rep.profiles.size(); ++i) {
        const auto& pf = rep.profiles[i];
        if (!pf.achieved[0] && !pf.achieved[1]) {
            rep.locally_empty = true;
            continue;
        }
        if (pf.both()) {
            if (!free_place) free_place = i;
            continue;
        }
        forced += pf.achieved[1] ? 1 : 0;
    }
    if (rep.locally_empty) {
        rep.obstructed = true;
    } else if (free_place || forced % 2 == 0) {
        rep.obstructed = false;
        std::vector<std::pair<Place, InvariantValue>> w;
        for (std::size_t i = 0; i < rep.profiles.size(); ++i) {
            const auto& pf = rep.profiles[i];
            int half = pf.achieved[0] ? 0 : 1;
            if (free_place && i == *free_place) half = forced % 2;
            w.emplace_back(pf.place, InvariantValue{half});
        }
        rep.zero_sum_witness = std::move(w);
    } else {
        rep.obstructed = true;
    }
    if (rep.obstructed)
        for (const auto& pf : rep.profiles)
            if (!pf.both() && pf.undecided > 0) rep.inconclusive = true;
    return rep;
}

namespace {

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = std::max<std::uint64_t>(lo, 2); q <= hi; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

}  // namespace

HarariReport harari_scan_serial(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode,
                                std::uint64_t lo, std::uint64_t hi, const ProfileOptions& opts) {
    HarariReport r;
    for (auto q : primes_in(lo, hi)) {
        if (M.excluded_places.count(BigInt(static_cast<unsigned long>(q)))) continue;
        ++r.primes_scanned;
        InvariantProfile pf;
        try {
            pf = invariant_profile(A, M, Place::finite(q), mode, opts);
        } catch (const Error&) {
            r.inconclusive.emplace_back(static_cast<unsigned long>(q));
            continue;
        }
        if (pf.both())
            r.two_valued.emplace_back(static_cast<unsigned long>(q));
        else if (pf.undecided > 0)
            r.inconclusive.emplace_back(static_cast<unsigned long>(q));
    }
    return r;
}

HarariReport harari_scan(const QuaternionClass& A, const OrbifoldModelZ& M, const Mode& mode, std::uint64_t lo,
                         std::uint64_t hi, const ProfileOptions& opts, int jobs) {
    std::vector<std::uint64_t> ps;
    for (auto q : primes_in(lo, hi))
        if (!M.excluded_places.count(BigInt(static_cast<unsigned long>(q)))) ps.push_back(q);
    std::vector<int> state(ps.size(), 0);  // 1 two-valued, 2 inconclusive
    const int nj = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nj)
    for (std::size_t i = 0; i < ps.size(); ++i) {
        try {
            auto pf = invariant_profile(A, M, Place::finite(ps[i]), mode, opts);
            state[i] = pf.both() ? 1 : (pf.undecided > 0 ? 2 : 0);
        } catch (const Error&) {
            state[i] = 2;
        }
    }
    HarariReport r;
    r.primes_scanned = ps.size();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (state[i] == 1) r.two_valued.emplace_back(static_cast<unsigned long>(ps[i]));
        if (state[i] == 2) r.inconclusive.emplace_back(static_cast<unsigned long>(ps[i]));
    }
    return r;
}

}  // namespace orbarith
