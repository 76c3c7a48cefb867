#include <doctest.h>

#include <random>

#include "orbarith/brauer.hpp"
#include "orbarith/census.hpp"
#include "orbarith/errors.hpp"
#include "orbarith/registry.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"

using namespace orbarith;
using namespace testmodels;

namespace {

QuaternionClass single(const QuaternionClass& A, std::size_t i) {
    QuaternionClass B;
    B.d = A.d;
    B.reps = {A.reps.at(i)};
    return B;
}

std::vector<ProjPointQ> strict_points(const OrbifoldModelZ& M, std::uint64_t H) {
    SearchOptions so;
    so.height = H;
    so.strict_only = true;
    return search_points(M, so);
}

// Lift the witness in its Hensel variable to precision N by Newton steps over Z.
std::vector<BigInt> newton_lift(const Poly& F, std::vector<BigInt> x, int var, long p, int N) {
    const BigInt pN = pow_big(BigInt(p), N);
    const Poly dF = F.derivative(var);
    for (int it = 0; it < 4 * N; ++it) {
        const BigInt f = oracle::mod(F.eval(x), pN);
        if (f == 0) break;
        BigInt g = dF.eval(x);
        const int e = oracle::val(g, p);
        const int s = oracle::val(f, p);
        REQUIRE(s > 2 * e);
        BigInt u = g / pow_big(BigInt(p), e), w = f / pow_big(BigInt(p), e), inv;
        REQUIRE(mpz_invert(inv.get_mpz_t(), BigInt(oracle::mod(u, pN)).get_mpz_t(), pN.get_mpz_t()) != 0);
        x[var] = oracle::mod(x[var] - w * inv, pN);
    }
    REQUIRE(oracle::mod(F.eval(x), pN) == 0);
    return x;
}

// Invariant of the class at an integer vector, from the Hilbert symbol alone; -1 if no
// representative is evaluable there.
int direct_invariant(const QuaternionClass& A, const std::vector<BigInt>& x, long p) {
    for (const auto& r : A.reps) {
        const BigInt n = r.num.eval(x), d = r.den.eval(x);
        if (n == 0 || d == 0) continue;
        BigRat second(A.d);
        if (r.second_num) {
            const BigInt sn = r.second_num->eval(x), sd = r.second_den->eval(x);
            if (sn == 0 || sd == 0) continue;
            second = BigRat(sn, sd);
            second.canonicalize();
        }
        BigRat g(n, d);
        g.canonicalize();
        return hilbert_symbol(g, second, Place::finite(p)) == 1 ? 0 : 1;
    }
    return -1;
}

bool mode_ok(const Mode& mode, const OrbifoldModelZ& M, const std::vector<BigInt>& x, long p) {
    for (const auto& c : M.divisor) {
        if (!c.weight.is_infinite() && c.weight.value() == 1) continue;
        const BigInt v = c.f.eval(x);
        const int n = oracle::val(v, p);
        switch (mode.kind) {
            case ModeKind::Integral:
                if (n != 0) return false;
                break;
            case ModeKind::Darmon:
                if (n % static_cast<int>(mode.m) != 0) return false;
                break;
            case ModeKind::Campana:
                if (n != 0 && n < static_cast<int>(mode.m)) return false;
                break;
        }
    }
    return true;
}

void check_witnesses(const InvariantProfile& prof, const QuaternionClass& A, const OrbifoldModelZ& M) {
    const long p = static_cast<long>(prof.place.prime_u64());
    for (int h = 0; h < 2; ++h) {
        if (!prof.achieved[h]) continue;
        bool found = false;
        for (const auto& w : prof.witnesses) found = found || w.value.half == h;
        REQUIRE(found);
    }
    // Points of the class are sampled by adding p^k * p^j * u to every coordinate except the
    // Hensel variable, which is then lifted. Every sample meeting the mode condition must carry
    // the stated value, and some sample must meet it.
    const Poly& F = M.ambient_equations.at(0);
    std::mt19937_64 rng(p);
    for (const auto& w : prof.witnesses) {
        const int k = w.cls.modulus_exponent;
        REQUIRE(k >= 2 * w.derivative_valuation + 1);
        const BigInt pk = pow_big(BigInt(p), k);
        REQUIRE(oracle::mod(F.eval(w.cls.coords), pk) == 0);
        int usable = 0;
        for (int trial = 0; trial < 400 && usable < 8; ++trial) {
            auto x = w.cls.coords;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (static_cast<int>(i) == w.hensel_variable || trial == 0) continue;
                const unsigned j = static_cast<unsigned>(rng() % 10);
                x[i] += pk * pow_big(BigInt(p), j) * BigInt(static_cast<unsigned long>(1 + rng() % 1000) * p + 1);
            }
            x = newton_lift(F, x, w.hensel_variable, p, k + 30);
            if (!mode_ok(prof.mode, M, x, p)) continue;
            const int v = direct_invariant(A, x, p);
            if (v < 0) continue;
            REQUIRE(v == w.value.half);
            ++usable;
        }
        CHECK(usable > 0);
    }
}

}  // namespace

TEST_SUITE("brauer") {

TEST_CASE("invariant examples") {
    const auto even = quadric(kEven, 4, 3);
    const auto P = normalize_point({1, 0, 0, 3});
    REQUIRE(even.model.on_ambient(P));
    CHECK(invariant_at_point(*even.cls, P, Place::finite(7)).half == 0);
    // Points with t a 3-adic unit.
    for (const auto& Q : strict_points(even.model, 15))
        if (Q.coords[3] % 3 != 0) CHECK(invariant_at_point(*even.cls, Q, Place::finite(3)).half == 1);

    const auto dwa = quadric(kDwa, 4, 7);
    // Rational points that are 4-Darmon at the place in question.
    const auto pts = strict_points(dwa.model, 20);
    REQUIRE(pts.size() > 20);
    int darmon_local = 0;
    for (const auto& Q : pts) {
        CHECK(invariant_at_point(*dwa.cls, Q, Place::real()).half == 0);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            if (!classify_local(Q, dwa.model, p).darmon) continue;
            ++darmon_local;
            CHECK(invariant_at_point(*dwa.cls, Q, Place::finite(p)).half == 0);
        }
    }
    CHECK(darmon_local > 20);
}

TEST_CASE("evaluation on the divisor throws") {
    QuaternionClass A;
    A.d = 5;
    A.reps.push_back({Poly::parse("x", {"x", "y"}), Poly::parse("y", {"x", "y"}), std::nullopt, std::nullopt});
    CHECK_THROWS_AS(invariant_at_point(A, normalize_point({1, 0}), Place::finite(5)), Error);
    try {
        invariant_at_point(A, normalize_point({0, 1}), Place::finite(5));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AllRepresentativesVanish);
    }
    CHECK(invariant_at_point(A, normalize_point({2, 1}), Place::finite(5)).half == 1);
}

TEST_CASE("representatives agree where both are defined") {
    std::vector<ModelFile> models{quadric(kEven, 4, 3), quadric(kDwa, 4, 7)};
    const auto fam = member_to_model({41, 1, 1, 1}, Weight::finite(2));
    models.push_back({fam.model, fam.cls});
    const auto fam2 = member_to_model({41, 1, 3, 1}, Weight::finite(2));
    models.push_back({fam2.model, fam2.cls});
    for (const auto& mf : models) {
        const auto pts = strict_points(mf.model, 40);
        int compared = 0;
        for (const auto& P : pts) {
            if (compared == 200) break;
            const auto A0 = single(*mf.cls, 0), A1 = single(*mf.cls, 1);
            for (const auto& v : {Place::real(), Place::finite(2), Place::finite(3), Place::finite(5), Place::finite(7),
                                  Place::finite(41)}) {
                InvariantValue a, b;
                try {
                    a = invariant_at_point(A0, P, v);
                    b = invariant_at_point(A1, P, v);
                } catch (const Error&) {
                    continue;
                }
                REQUIRE(a == b);
            }
            ++compared;
        }
        CHECK(compared > 0);
    }
}

TEST_CASE("global reciprocity on rational points") {
    std::vector<ModelFile> models{quadric(kDwa, 4, 7), quadric(kEven, 4, 3)};
    const auto fam = member_to_model({41, 1, 1, 1}, Weight::finite(3));
    models.push_back({fam.model, fam.cls});
    for (const auto& mf : models) {
        const auto pts = strict_points(mf.model, 30);
        REQUIRE(!pts.empty());
        for (const auto& P : pts) {
            CHECK(global_invariant_sum(*mf.cls, P) == 0);
            // Recompute over REAL and the primes dividing the evaluated data.
            const auto& r = mf.cls->reps[0];
            const BigInt n = r.num.eval(P.coords), d = r.den.eval(P.coords);
            if (n == 0) continue;
            std::set<BigInt> primes{2};
            for (const BigInt& q : {n, d, mf.cls->d})
                for (const auto& p : prime_divisors(q)) primes.insert(p);
            BigRat g(n, d);
            g.canonicalize();
            int sum = hilbert_symbol(g, BigRat(mf.cls->d), Place::real()) == 1 ? 0 : 1;
            for (const auto& p : primes) sum += hilbert_symbol(g, BigRat(mf.cls->d), Place::finite(p)) == 1 ? 0 : 1;
            CHECK(sum % 2 == 0);
        }
    }
}

TEST_CASE("profiles of the family member at 5") {
    const auto fi = member_to_model({41, 1, 1, 1}, Weight::infinity());
    const auto integral = invariant_profile(fi.cls, fi.model, Place::finite(5), Mode::integral());
    CHECK(integral.only(1));
    CHECK(integral.undecided == 0);
    check_witnesses(integral, fi.cls, fi.model);

    for (unsigned long m = 2; m <= 5; ++m) {
        const auto fm = member_to_model({41, 1, 1, 1}, Weight::finite(m));
        ProfileOptions o;
        o.stop_when_both = false;
        const auto prof = invariant_profile(fm.cls, fm.model, Place::finite(5), Mode::darmon(m), o);
        CHECK(prof.achieved[0]);
        check_witnesses(prof, fm.cls, fm.model);
    }
}

TEST_CASE("profile witnesses are sound") {
    const auto even = quadric(kEven, 4, 3);
    const auto dwa = quadric(kDwa, 4, 7);
    const auto& cub = find_example("cubic-dmbo").model;
    struct Case {
        const ModelFile* mf;
        long p;
        Mode mode;
    };
    const std::vector<Case> cases{{&even, 3, Mode::darmon(3)}, {&even, 3, Mode::darmon(4)}, {&even, 11, Mode::campana(2)},
                                  {&even, 13, Mode::campana(2)}, {&dwa, 2, Mode::darmon(4)},  {&dwa, 7, Mode::darmon(4)},
                                  {&cub, 2, Mode::integral()}};
    for (const auto& c : cases) {
        ProfileOptions o;
        o.stop_when_both = false;
        const auto prof = invariant_profile(*c.mf->cls, c.mf->model, Place::finite(c.p), c.mode, o);
        INFO("p=" << c.p << " mode=" << c.mode.to_string());
        check_witnesses(prof, *c.mf->cls, c.mf->model);
    }
}

TEST_CASE("cubic 2-adic profile on integral points takes both values") {
    // Both values occur; a certified witness of each is checked above.
    const auto& cub = find_example("cubic-dmbo").model;
    ProfileOptions o;
    o.stop_when_both = false;
    const auto prof = invariant_profile(*cub.cls, cub.model, Place::finite(2), Mode::integral(), o);
    CHECK(prof.both());
}

TEST_CASE("adelic obstruction examples") {
    const auto even = quadric(kEven, 4, 3);
    for (unsigned long m : {4UL, 6UL}) {
        const auto r = adelic_obstruction(*even.cls, even.model, Mode::darmon(m));
        CHECK(r.obstructed);
        CHECK_FALSE(r.zero_sum_witness.has_value());
    }
    const auto r3 = adelic_obstruction(*even.cls, even.model, Mode::darmon(3));
    CHECK_FALSE(r3.obstructed);
    CHECK(r3.zero_sum_witness.has_value());

    const auto fi = member_to_model({41, 1, 1, 1}, Weight::infinity());
    const auto ri = adelic_obstruction(fi.cls, fi.model, Mode::integral());
    CHECK(ri.obstructed);
    CHECK_FALSE(ri.inconclusive);
    for (unsigned long m = 2; m <= 5; ++m) {
        const auto fm = member_to_model({41, 1, 1, 1}, Weight::finite(m));
        const auto rd = adelic_obstruction(fm.cls, fm.model, Mode::darmon(m));
        CHECK_FALSE(rd.obstructed);
        REQUIRE(rd.zero_sum_witness.has_value());
        int sum = 0;
        for (const auto& [place, val] : *rd.zero_sum_witness) sum += val.half;
        CHECK(sum % 2 == 0);
    }
    CHECK(ri.profiles.front().place.is_real());
    for (std::size_t i = 2; i < ri.profiles.size(); ++i)
        CHECK(ri.profiles[i - 1].place.prime() < ri.profiles[i].place.prime());
}

TEST_CASE("integral obstruction leaves no integral points") {
    const auto fi = member_to_model({41, 1, 1, 1}, Weight::infinity());
    SearchOptions so;
    so.height = 40;
    so.flag = PointFlag::Integral;
    CHECK(search_points(fi.model, so).empty());
}

TEST_CASE("Harari scan examples") {
    const auto even = quadric(kEven, 2, 3);
    const auto h = harari_scan(*even.cls, even.model, Mode::campana(2), 2, 200);
    CHECK_FALSE(h.two_valued.empty());
    CHECK(h.inconclusive.empty());
    for (const auto& p : h.two_valued) {
        if (p == 2 || p == 3) continue;
        CHECK(legendre(3, p) == -1);
    }
    // Conversely every nonresidue prime shows both values.
    std::size_t nonres = 0;
    for (long p = 5; p <= 200; ++p)
        if (is_prime(BigInt(p)) && legendre(3, p) == -1) ++nonres;
    std::size_t odd_found = 0;
    for (const auto& p : h.two_valued)
        if (p > 3) ++odd_found;
    CHECK(odd_found == nonres);

    const auto dwa = quadric(kDwa, 4, 7);
    CHECK(harari_scan(*dwa.cls, dwa.model, Mode::darmon(4), 2, 100).two_valued.empty());

    const auto square = quadric(kEven, 2, 4);
    const auto hs = harari_scan(*square.cls, square.model, Mode::campana(2), 2, 100);
    CHECK(hs.two_valued.empty());
    CHECK(hs.inconclusive.empty());
}

TEST_CASE("parallel Harari scan equals the serial reference") {
    const auto even = quadric(kEven, 2, 3);
    const auto a = harari_scan(*even.cls, even.model, Mode::campana(2), 2, 120, {}, 4);
    const auto b = harari_scan_serial(*even.cls, even.model, Mode::campana(2), 2, 120);
    CHECK(a.two_valued == b.two_valued);
    CHECK(a.inconclusive == b.inconclusive);
    CHECK(a.primes_scanned == b.primes_scanned);
}

TEST_CASE("modes") {
    CHECK_THROWS_AS(Mode::darmon(1), Error);
    CHECK_THROWS_AS(Mode::campana(0), Error);
    CHECK(parse_mode("darmon", 4).kind == ModeKind::Darmon);
    CHECK(parse_mode("integral", 0).kind == ModeKind::Integral);
    CHECK_THROWS_AS(parse_mode("strong", 2), Error);
}

}
