#include "orbarith/census.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "orbarith/arith.hpp"
#include "orbarith/errors.hpp"

namespace orbarith {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void add_primes(std::uint64_t n, std::vector<std::uint64_t>& out) {
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
}

// #{1 <= c <= C : gcd(c, ∏ primes) = 1} by inclusion–exclusion; products above C drop out.
std::int64_t mobius_sum(std::uint64_t C, const std::vector<std::uint64_t>& primes, std::size_t from, std::uint64_t r) {
    std::int64_t total = static_cast<std::int64_t>(C / r);
    for (std::size_t i = from; i < primes.size(); ++i)
        if (r <= C / primes[i]) total -= mobius_sum(C, primes, i + 1, r * primes[i]);
    return total;
}

std::uint64_t coprime_count(std::uint64_t C, const std::vector<std::uint64_t>& primes) {
    return static_cast<std::uint64_t>(mobius_sum(C, primes, 0, 1));
}

// The distinct primes of 5abd.
std::vector<std::uint64_t> forbidden_primes(std::uint64_t a, std::uint64_t b, std::uint64_t d) {
    std::vector<std::uint64_t> ps{5};
    add_primes(a, ps);
    add_primes(b, ps);
    add_primes(d, ps);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

std::vector<std::uint64_t> a_values(std::uint64_t B) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 1; 25 * a <= B; a += 40)
        if (a % 5 != 0 && is_squarefree_u64(a)) out.push_back(a);
    return out;
}

// Visits every admissible (a, b, d) with the number of admissible c.
template <class F>
void for_each_triple(std::uint64_t B, std::uint64_t a, F&& f) {
    const std::uint64_t C = isqrt(B / 16);
    const std::uint64_t bmax = isqrt(B / (5 * a)), dmax = isqrt(B / (25 * a));
    for (std::uint64_t b = 1; b <= bmax; b += 2) {
        if (b % 5 == 0) continue;
        for (std::uint64_t d = 1; d <= dmax; d += 2) {
            if (d % 5 == 0) continue;
            auto ps = forbidden_primes(a, b, d);
            f(b, d, C, ps, coprime_count(C, ps));
        }
    }
}

std::uint64_t count_for_a(std::uint64_t B, std::uint64_t a) {
    std::uint64_t n = 0;
    for_each_triple(B, a, [&](auto, auto, auto, const auto&, std::uint64_t cnt) { n += cnt; });
    return n;
}

BigInt big_of(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace

std::string FamilyMember::to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) +
           ")";
}

bool member_valid(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a <= 0 || b == 0 || c == 0 || d == 0) return false;
    if (a % 40 != 1 || !is_squarefree_u64(static_cast<std::uint64_t>(a))) return false;
    auto g = [](std::int64_t x, std::int64_t y) { return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y); };
    if (g(a, c) != 1) return false;
    if (g(b, 2 * c) != 1 || g(d, 2 * c) != 1) return false;
    for (std::int64_t v : {a, b, c, d})
        if (v % 5 == 0) return false;
    return true;
}

FamilyModel member_to_model(const FamilyMember& m, const Weight& w) {
    if (!member_valid(m)) throw Error(ErrorKind::InvalidMember, m.to_string() + " violates the family constraints");
    const std::vector<std::string> names{"x", "y", "z", "t"};
    auto var = [&](int i) { return Poly::variable(4, i); };
    const BigInt a = big_of(m.a), b = big_of(m.b), c = big_of(m.c), d = big_of(m.d);
    FamilyModel out;
    out.model.ambient_dim = 3;
    out.model.var_names = names;
    Poly eq = var(0) * var(0) * BigInt(5 * a * b * b) - var(1) * var(1) * BigInt(25 * a * d * d) +
              var(2) * var(2) * BigInt(16 * c * c) - var(3) * var(3);
    out.model.ambient_equations = {eq};
    out.model.divisor = {{var(3), w}};
    out.cls.d = 5;
    out.cls.reps.push_back({var(3) - var(2) * BigInt(4 * c), var(3), std::nullopt, std::nullopt});
    out.cls.reps.push_back({var(3) + var(2) * BigInt(4 * c), var(3), std::nullopt, std::nullopt});
    return out;
}

DarmonWitness darmon_witness_at_5(const FamilyMember& mem, unsigned long weight) {
    if (weight < 2) throw Error(ErrorKind::InvalidMember, "Darmon weight must be at least 2");
    auto fm = member_to_model(mem, Weight::finite(weight));
    const Poly& F = fm.model.ambient_equations[0];
    const Poly Fz = F.derivative(2);
    const BigInt five(5), c = big_of(mem.c), d = big_of(mem.d);

    DarmonWitness w;
    w.m = weight;
    std::vector<BigInt> pt{five, c * c, BigInt(-5 * c * d), d * pow_big(five, weight)};
    for (const auto& x : pt) w.residue.push_back(BigInt(((x % 125) + 125) % 125));
    w.t_valuation = static_cast<int>(valuation_unchecked(pt[3], five));
    const auto vF = valuation_unchecked(F.eval(pt), five);
    w.derivative_valuation = static_cast<int>(valuation_unchecked(Fz.eval(pt), five));
    const int e = w.derivative_valuation;

    w.precision = static_cast<int>(weight) + 10;
    const BigInt mod = pow_big(five, static_cast<unsigned long>(w.precision));
    const BigInt pe = pow_big(five, static_cast<unsigned long>(e));
    bool lifted = vF >= 3 && 2 * e + 1 <= 3;
    for (int it = 0; lifted && it < 64; ++it) {
        BigInt Fv = F.eval(pt);
        if (Fv % mod == 0) break;
        BigInt Fd = Fz.eval(pt);
        if (valuation_unchecked(Fd, five) != static_cast<std::uint64_t>(e)) {
            lifted = false;
            break;
        }
        BigInt inv, unit = BigInt(Fd / pe) % mod;
        if (unit < 0) unit += mod;
        mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        BigInt delta = BigInt(Fv / pe) * inv % mod;
        pt[2] = BigInt(pt[2] - delta) % mod;
    }
    lifted = lifted && F.eval(pt) % mod == 0;
    w.lifted = pt;
    w.certified = lifted && w.t_valuation == static_cast<int>(weight);
    w.invariant = invariant_at_point(fm.cls, normalize_point(pt), Place::finite(five));
    return w;
}

bool MemberVerdict::passed() const {
    if (!locally_soluble || !integral_obstructed || integral_point) return false;
    return std::all_of(darmon.begin(), darmon.end(), [](const DarmonCheck& c) { return c.passed(); });
}

MemberVerdict verify_member(const FamilyMember& m, const VerifyOptions& opts) {
    MemberVerdict v;
    v.member = m;
    v.height_bound = opts.height_bound;
    auto integral = member_to_model(m, Weight::infinity());
    ObstructionOptions oo;
    oo.jobs = opts.jobs;
    oo.profile = opts.profile;
    auto rep = adelic_obstruction(integral.cls, integral.model, Mode::integral(), oo);
    if (rep.inconclusive)
        throw Error(ErrorKind::Inconclusive, "INTEGRAL profiles undecided for member " + m.to_string());
    v.locally_soluble = !rep.locally_empty && std::all_of(rep.profiles.begin(), rep.profiles.end(), [](const auto& p) {
        return p.achieved[0] || p.achieved[1];
    });
    v.integral_obstructed = rep.obstructed;

    for (unsigned long w : opts.weights) {
        auto fm = member_to_model(m, Weight::finite(w));
        DarmonCheck dc;
        dc.m = w;
        dc.witness = darmon_witness_at_5(m, w);
        auto dr = adelic_obstruction(fm.cls, fm.model, Mode::darmon(w), oo);
        if (dr.inconclusive)
            throw Error(ErrorKind::Inconclusive,
                        "DARMON(" + std::to_string(w) + ") profiles undecided for member " + m.to_string());
        dc.obstructed = dr.obstructed;
        v.darmon.push_back(std::move(dc));
    }

    if (opts.height_bound > 0) {
        SearchOptions so;
        so.height = opts.height_bound;
        so.flag = PointFlag::Integral;
        so.jobs = opts.jobs;
        auto pts = search_points(integral.model, so);
        if (!pts.empty()) v.integral_point = pts.front();
    }
    return v;
}

std::uint64_t count_members_serial(std::uint64_t B) {
    std::uint64_t n = 0;
    for (auto a : a_values(B)) n += count_for_a(B, a);
    return n;
}

std::uint64_t count_members(std::uint64_t B, int jobs) {
    const auto as = a_values(B);
    std::uint64_t n = 0;
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) reduction(+ : n) num_threads(threads)
    for (std::size_t i = 0; i < as.size(); ++i) n += count_for_a(B, as[i]);
    return n;
}

std::vector<FamilyMember> sample_members(std::uint64_t B, std::uint64_t n, std::uint64_t seed) {
    const std::uint64_t total = count_members_serial(B);
    n = std::min(n, total);
    std::set<std::uint64_t> picks;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, total ? total - 1 : 0);
    while (picks.size() < n) picks.insert(dist(rng));

    std::vector<FamilyMember> out;
    auto next = picks.begin();
    std::uint64_t pos = 0;
    for (auto a : a_values(B)) {
        if (next == picks.end()) break;
        for_each_triple(B, a, [&](std::uint64_t b, std::uint64_t d, std::uint64_t C, const auto& ps, std::uint64_t cnt) {
            std::uint64_t j = pos;
            for (std::uint64_t c = 1; c <= C && next != picks.end() && *next < pos + cnt; ++c) {
                if (std::any_of(ps.begin(), ps.end(), [&](std::uint64_t q) { return c % q == 0; })) continue;
                if (j == *next) {
                    out.push_back({static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                                   static_cast<std::int64_t>(c), static_cast<std::int64_t>(d)});
                    ++next;
                }
                ++j;
            }
            pos += cnt;
        });
    }
    return out;
}

CensusResult count_lower_bound(std::uint64_t B, const CensusOptions& opts) {
    if (B < 25) throw Error(ErrorKind::ParseError, "census bound must be at least 25");
    const auto t0 = std::chrono::steady_clock::now();
    CensusResult res;
    res.bound = B;

    const auto as = a_values(B);
    std::size_t start = 0;
    std::uint64_t count = 0;
    if (!opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
        std::ifstream in(opts.checkpoint);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, "checkpoint " + opts.checkpoint + ": " + e.what());
        }
        if (j.value("bound", std::uint64_t{0}) != B)
            throw Error(ErrorKind::ParseError, "checkpoint " + opts.checkpoint + " was written for another bound");
        const auto last = j.at("last_a").get<std::int64_t>();
        count = j.at("count").get<std::uint64_t>();
        res.resumed_from = last;
        while (start < as.size() && static_cast<std::int64_t>(as[start]) <= last) ++start;
    }

    const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
    const std::size_t block = 64;
    for (std::size_t lo = start; lo < as.size(); lo += block) {
        const std::size_t hi = std::min(as.size(), lo + block);
        std::uint64_t part = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : part) num_threads(threads)
        for (std::size_t i = lo; i < hi; ++i) part += count_for_a(B, as[i]);
        count += part;
        if (!opts.checkpoint.empty()) {
            nlohmann::json j{{"schema", 1}, {"bound", B}, {"last_a", as[hi - 1]}, {"count", count}};
            const std::string tmp = opts.checkpoint + ".tmp";
            std::ofstream(tmp) << j.dump() << "\n";
            std::filesystem::rename(tmp, opts.checkpoint);
        }
    }
    res.count = count;

    if (opts.verify && count > 0) {
        std::uint64_t n = opts.verify_all ? count
                                          : std::max<std::uint64_t>(opts.sample_floor,
                                                                    static_cast<std::uint64_t>(std::ceil(
                                                                        opts.verify_fraction * static_cast<double>(count))));
        VerifyOptions vo = opts.verify_opts;
        if (vo.jobs == 0) vo.jobs = opts.jobs;
        for (const auto& m : sample_members(B, n, opts.seed)) {
            auto v = verify_member(m, vo);
            if (!v.passed()) throw Error(ErrorKind::ExpectationFailed, "sampled member " + m.to_string() + " failed verification");
            res.samples.push_back(std::move(v));
        }
    }
    res.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<GrowthRow> growth_table(const std::vector<std::uint64_t>& bounds, int jobs) {
    std::vector<GrowthRow> rows;
    for (auto B : bounds) {
        GrowthRow r;
        r.bound = B;
        r.count = count_members(B, jobs);
        const double x = static_cast<double>(B);
        r.ratio = static_cast<double>(r.count) / (std::pow(x, 1.5) * std::log(x));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace orbarith
