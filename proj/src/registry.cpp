#include "orbarith/registry.hpp"

#include "orbarith/census.hpp"
#include "orbarith/errors.hpp"

namespace orbarith {

namespace {

const std::vector<std::string> kXYZT{"x", "y", "z", "t"};

ModelFile quadric(const std::string& eq, const Weight& w, std::optional<long> d) {
    ModelFile mf;
    mf.model.ambient_dim = 3;
    mf.model.var_names = kXYZT;
    mf.model.ambient_equations = {Poly::parse(eq, kXYZT)};
    mf.model.divisor = {{Poly::parse("t", kXYZT), w}};
    if (d) {
        QuaternionClass A;
        A.d = *d;
        A.reps.push_back({Poly::parse("t - 4*z", kXYZT), Poly::parse("t", kXYZT), std::nullopt, std::nullopt});
        A.reps.push_back({Poly::parse("t + 4*z", kXYZT), Poly::parse("t", kXYZT), std::nullopt, std::nullopt});
        mf.cls = std::move(A);
    }
    return mf;
}

ModelFile with_weight(ModelFile mf, const Weight& w) {
    for (auto& c : mf.model.divisor) c.weight = w;
    return mf;
}

ExampleCheck check(std::string name, std::string expected, std::string observed, bool pass, std::string source) {
    return {std::move(name), std::move(expected), std::move(observed), pass, std::move(source)};
}

std::string flags_string(const GlobalClassification& g) {
    std::string s;
    auto add = [&](const char* n, bool b) { s += std::string(s.empty() ? "" : " ") + n + "=" + (b ? "1" : "0"); };
    add("integral", g.integral);
    add("darmon", g.darmon);
    add("campana", g.campana);
    add("strict", g.strict);
    return s;
}

std::string verdict_string(const SolubilityVerdict& v) {
    std::string s = to_string(v.status);
    if (v.status == Status::Yes && v.certificate) {
        s += " [";
        for (std::size_t i = 0; i < v.certificate->solution.coords.size(); ++i)
            s += (i ? ":" : "") + v.certificate->solution.coords[i].get_str();
        s += "] mod " + v.certificate->solution.prime.get_str() + "^" +
             std::to_string(v.certificate->solution.modulus_exponent);
    }
    if (v.status == Status::No) s += v.bound_certified ? " (certified)" : " (tree died out)";
    return s;
}

std::string profile_string(const InvariantProfile& p) {
    return p.achieved_string() + " depth " + std::to_string(p.depth_used) + " undecided " + std::to_string(p.undecided);
}

ObstructionOptions obs_opts(int jobs) {
    ObstructionOptions o;
    o.jobs = jobs;
    return o;
}

// (x, y, z, t) points indexed by the weight m.
std::vector<ExampleCheck> darmon_points(const ModelFile& base, const std::string& label,
                                        std::vector<long> (*point)(unsigned), const std::string& source) {
    std::vector<ExampleCheck> out;
    for (unsigned m = 1; m <= 6; ++m) {
        auto mf = with_weight(base, Weight::finite(m));
        auto raw = point(m);
        std::vector<BigInt> big;
        for (long c : raw) big.emplace_back(c);
        auto P = normalize_point(big);
        std::string name = label + " is a Darmon point for m = " + std::to_string(m);
        if (!mf.model.on_ambient(P)) {
            out.push_back(check(name, "darmon=1", "point not on the model", false, source));
            continue;
        }
        auto g = classify_global(P, mf.model);
        out.push_back(check(name, "darmon=1", P.to_string() + " " + flags_string(g), g.darmon, source));
    }
    return out;
}

long pow4(unsigned e) {
    long r = 1;
    while (e--) r *= 4;
    return r;
}

std::vector<ExampleCase> build() {
    std::vector<ExampleCase> reg;

    {
        ExampleCase c;
        c.id = "intro-quadric";
        c.title = "3(x-y)(x+y) = (t-4z)(t+4z) with divisor Z(t)";
        c.model = quadric("3*(x-y)*(x+y) - (t-4*z)*(t+4*z)", Weight::infinity(), std::nullopt);
        c.run = [m = c.model](int) {
            std::vector<ExampleCheck> out;
            const char* src = "introduction";
            ZpOptions zo;
            zo.unit_forms = {Poly::parse("t", kXYZT)};
            auto v = zp_points_on_hypersurface(m.model.ambient_equations[0], BigInt(2), zo);
            out.push_back(check("no 2-adic integral points (t a unit)", "NO (certified)", verdict_string(v),
                                v.status == Status::No && v.bound_certified, src));
            auto pts = darmon_points(
                m, "[1:1:4^(m-1):4^m]",
                [](unsigned k) { return std::vector<long>{1, 1, pow4(k - 1), pow4(k)}; }, src);
            out.insert(out.end(), pts.begin(), pts.end());
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "cubic-dmbo";
        c.title = "y^2 z = (4x - z)(16x^2 + 20xz + 7z^2) + t^3 with class (-t^3/y^3, z/y)";
        c.model.model.ambient_dim = 3;
        c.model.model.var_names = kXYZT;
        c.model.model.ambient_equations = {
            Poly::parse("y^2*z - (4*x - z)*(16*x^2 + 20*x*z + 7*z^2) - t^3", kXYZT)};
        c.model.model.divisor = {{Poly::parse("t", kXYZT), Weight::infinity()}};
        QuaternionClass A;
        A.d = 1;
        A.reps.push_back({Poly::parse("-t^3", kXYZT), Poly::parse("y^3", kXYZT), Poly::parse("z", kXYZT),
                          Poly::parse("y", kXYZT)});
        c.model.cls = A;
        c.run = [m = c.model](int) {
            std::vector<ExampleCheck> out;
            const char* src = "cubic surface example";
            ProfileOptions po;
            po.max_depth = 12;
            po.stop_when_both = false;
            auto p = invariant_profile(*m.cls, m.model, Place::finite(BigInt(2)), Mode::integral(), po);
            std::string obs = profile_string(p);
            for (const auto& w : p.witnesses) {
                obs += "; " + w.value.to_string() + " at [";
                for (std::size_t i = 0; i < w.cls.coords.size(); ++i) obs += (i ? ":" : "") + w.cls.coords[i].get_str();
                obs += "] mod 2^" + std::to_string(w.cls.modulus_exponent);
            }
            out.push_back(check("2-adic invariant on integral points", "{1/2}", obs, p.only(1) && p.undecided == 0, src));
            auto pts = darmon_points(
                m, "[-4^(m-1):1:0:4^m]",
                [](unsigned k) { return std::vector<long>{-pow4(k - 1), 1, 0, pow4(k)}; }, src);
            out.insert(out.end(), pts.begin(), pts.end());
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "quadrics-even";
        c.title = "9x^2 - 3y^2 = (t-4z)(t+4z) with class (1 - 4z/t, 3)";
        c.model = quadric("9*x^2 - 3*y^2 - (t - 4*z)*(t + 4*z)", Weight::finite(4), 3);
        c.run = [m = c.model](int jobs) {
            std::vector<ExampleCheck> out;
            const char* src = "even-weight quadric example";
            const Place three = Place::finite(BigInt(3));
            for (unsigned long w : {4ul, 6ul, 3ul}) {
                auto mf = with_weight(m, Weight::finite(w));
                auto r = adelic_obstruction(*mf.cls, mf.model, Mode::darmon(w), obs_opts(jobs));
                std::string inv3 = "?";
                for (const auto& p : r.profiles)
                    if (p.place == three) inv3 = p.achieved_string();
                const bool want = w % 2 == 0;
                std::string obs = std::string("obstructed=") + (r.obstructed ? "1" : "0") + " inv_3=" + inv3 +
                                  (r.zero_sum_witness ? " zero-sum witness found" : "") +
                                  (r.inconclusive ? " INCONCLUSIVE" : "");
                out.push_back(check("DARMON(" + std::to_string(w) + ") obstruction",
                                    std::string("obstructed=") + (want ? "1" : "0") + " inv_3={1/2}", obs,
                                    r.obstructed == want && !r.inconclusive && inv3 == "{1/2}" &&
                                        (want || r.zero_sum_witness),
                                    src));
            }
            auto at = [&](std::initializer_list<long> pt, const Place& v) {
                return invariant_at_point(*m.cls, normalize_point(pt), v).to_string();
            };
            std::string a = at({1, 0, 0, 3}, Place::finite(BigInt(7)));
            out.push_back(check("inv_7 at [1:0:0:3]", "0", a, a == "0", src));
            std::string b = at({0, 0, 1, 4}, three);
            out.push_back(check("inv_3 at [0:0:1:4]", "1/2", b, b == "1/2", src));
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "conic-3adic";
        c.title = "x^2 + y^2 = 9z^2 with divisor (1 - 1/3)Z(x - y)";
        const std::vector<std::string> xyz{"x", "y", "z"};
        c.model.model.ambient_dim = 2;
        c.model.model.var_names = xyz;
        c.model.model.ambient_equations = {Poly::parse("x^2 + y^2 - 9*z^2", xyz)};
        c.model.model.divisor = {{Poly::parse("x - y", xyz), Weight::finite(3)}};
        c.run = [m = c.model](int jobs) {
            SearchOptions so;
            so.height = 50;
            so.flag = PointFlag::Campana;
            so.jobs = jobs;
            auto pts = search_points(m.model, so);
            std::string obs = std::to_string(pts.size()) + " points";
            if (!pts.empty()) obs += ", first " + pts.front().to_string();
            return std::vector<ExampleCheck>{
                check("Campana points of height <= 50", "none", obs, pts.empty(), "conic example")};
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "dwa";
        c.title = "49x^2 - 7y^2 + 16z^2 = t^2 with class (1 - 4z/t, 7)";
        c.model = quadric("49*x^2 - 7*y^2 + 16*z^2 - t^2", Weight::finite(4), 7);
        c.run = [m = c.model](int jobs) {
            std::vector<ExampleCheck> out;
            const char* src = "Darmon weak approximation example";
            for (const auto& v : {Place::real(), Place::finite(BigInt(2)), Place::finite(BigInt(7))}) {
                auto p = invariant_profile(*m.cls, m.model, v, Mode::darmon(4));
                out.push_back(check("DARMON(4) profile at " + v.to_string(), "{0}", profile_string(p), p.only(0), src));
            }
            auto r = adelic_obstruction(*m.cls, m.model, Mode::darmon(4), obs_opts(jobs));
            out.push_back(check("strict Darmon adelic points survive", "obstructed=0, locally nonempty",
                                std::string("obstructed=") + (r.obstructed ? "1" : "0") +
                                    " locally_empty=" + (r.locally_empty ? "1" : "0"),
                                !r.obstructed && !r.locally_empty, src));
            auto h = harari_scan(*m.cls, m.model, Mode::darmon(4), 2, 100, {}, jobs);
            out.push_back(check("no two-valued prime up to 100", "none",
                                std::to_string(h.two_valued.size()) + " of " + std::to_string(h.primes_scanned) +
                                    " primes, " + std::to_string(h.inconclusive.size()) + " inconclusive",
                                h.two_valued.empty() && h.inconclusive.empty(), src));
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "p1-automorphism";
        c.title = "P^1 with divisor (1 - 1/2)[0:1]";
        const std::vector<std::string> xy{"x", "y"};
        c.model.model.ambient_dim = 1;
        c.model.model.var_names = xy;
        c.model.model.divisor = {{Poly::parse("x", xy), Weight::finite(2)}};
        c.run = [m = c.model](int) {
            std::vector<ExampleCheck> out;
            const char* src = "orbifold automorphism example on P^1";
            for (auto [x, want] : {std::pair{4L, true}, std::pair{2L, false}}) {
                auto l = classify_local(normalize_point({x, 1}), m.model, BigInt(2));
                out.push_back(check("[" + std::to_string(x) + ":1] is 2-adic Campana", want ? "campana=1" : "campana=0",
                                    std::string("campana=") + (l.campana ? "1" : "0") + " n_2=" +
                                        l.multiplicities.at(0).to_string(),
                                    l.campana == want, src));
            }
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "dhp-double-cover";
        c.title = "9x^2 - 3y^2 = -t^2 - 16z^2, the twisted double cover";
        c.model = quadric("9*x^2 - 3*y^2 + t^2 + 16*z^2", Weight::finite(4), 3);
        c.run = [m = c.model](int) {
            std::vector<ExampleCheck> out;
            for (unsigned long w : {4ul, 6ul}) {
                auto mf = with_weight(m, Weight::finite(w));
                auto p = invariant_profile(*mf.cls, mf.model, Place::finite(BigInt(3)), Mode::darmon(w));
                out.push_back(check("no 3-adic Darmon points, m = " + std::to_string(w), "EMPTY", profile_string(p),
                                    p.empty, "Darmon Hasse principle failure via double covers"));
            }
            return out;
        };
        reg.push_back(std::move(c));
    }

    {
        ExampleCase c;
        c.id = "family-demo";
        c.title = "family member (a,b,c,d) = (41,1,1,1): 205x^2 - 1025y^2 + 16z^2 = t^2";
        const FamilyMember mem{41, 1, 1, 1};
        auto fm = member_to_model(mem, Weight::infinity());
        c.model = {fm.model, fm.cls};
        c.run = [mem](int jobs) {
            std::vector<ExampleCheck> out;
            const char* src = "lower-bound family";
            auto fi = member_to_model(mem, Weight::infinity());
            const Place five = Place::finite(BigInt(5));
            auto p = invariant_profile(fi.cls, fi.model, five, Mode::integral());
            out.push_back(check("INTEGRAL profile at 5", "{1/2}, undecided 0", profile_string(p),
                                p.only(1) && p.undecided == 0, src));
            auto r = adelic_obstruction(fi.cls, fi.model, Mode::integral(), obs_opts(jobs));
            out.push_back(check("INTEGRAL obstruction", "obstructed=1", std::string("obstructed=") + (r.obstructed ? "1" : "0"),
                                r.obstructed && !r.inconclusive, src));
            for (unsigned long w = 2; w <= 5; ++w) {
                auto fm2 = member_to_model(mem, Weight::finite(w));
                auto pd = invariant_profile(fm2.cls, fm2.model, five, Mode::darmon(w));
                auto wit = darmon_witness_at_5(mem, w);
                auto rd = adelic_obstruction(fm2.cls, fm2.model, Mode::darmon(w), obs_opts(jobs));
                std::string obs = "profile " + profile_string(pd) + ", witness inv " + wit.invariant.to_string() +
                                  (wit.certified ? " certified" : " uncertified") +
                                  ", obstructed=" + (rd.obstructed ? "1" : "0");
                out.push_back(check("DARMON(" + std::to_string(w) + ") at 5 and globally",
                                    "profile contains 0, witness inv 0 certified, obstructed=0", obs,
                                    pd.achieved[0] && wit.certified && wit.invariant.half == 0 && !rd.obstructed &&
                                        rd.zero_sum_witness.has_value(),
                                    src));
            }
            return out;
        };
        reg.push_back(std::move(c));
    }
    return reg;
}

}  // namespace

const std::vector<ExampleCase>& example_registry() {
    static const std::vector<ExampleCase> reg = build();
    return reg;
}

const ExampleCase& find_example(const std::string& id) {
    for (const auto& c : example_registry())
        if (c.id == id) return c;
    throw Error(ErrorKind::ParseError, "unknown example id '" + id + "'");
}

}  // namespace orbarith
