// orbifold-arith: command-line front end. Every command prints one JSON document with
// "schema": 1; --pretty indents it (and prints a table for paper-verify).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "orbarith/brauer.hpp"
#include "orbarith/census.hpp"
#include "orbarith/errors.hpp"
#include "orbarith/model_io.hpp"
#include "orbarith/registry.hpp"

using namespace orbarith;
using nlohmann::json;

namespace {

struct Common {
    std::string model_path, example;
    bool pretty = false;
    int jobs = 0;
};

struct ModeArgs {
    std::string kind = "integral";
    unsigned long weight = 0;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("orbifold-arith");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("ORBIFOLD_ARITH_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

ModelFile load(const Common& c) {
    if (!c.model_path.empty() && !c.example.empty())
        throw Error(ErrorKind::ParseError, "give either --model or --example, not both");
    if (!c.example.empty()) return find_example(c.example).model;
    if (c.model_path.empty()) throw Error(ErrorKind::ParseError, "--model FILE or --example ID is required");
    spdlog::info("loading model {}", c.model_path);
    return load_model(c.model_path);
}

void override_weight(ModelFile& mf, unsigned long w) {
    if (w == 0) return;
    for (auto& comp : mf.model.divisor) comp.weight = Weight::finite(w);
}

const QuaternionClass& need_class(const ModelFile& mf) {
    if (!mf.cls) throw Error(ErrorKind::ParseError, "the model has no \"brauer\" section");
    return *mf.cls;
}

std::vector<BigInt> parse_int_list(const std::string& s, char sep = ',') {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(parse_bigint(part));
    if (out.empty()) throw Error(ErrorKind::ParseError, "empty integer list");
    return out;
}

BigRat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(parse_bigint(s));
    BigInt d = parse_bigint(s.substr(slash + 1));
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    BigRat q(parse_bigint(s.substr(0, slash)), d);
    q.canonicalize();
    return q;
}

Place parse_place(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "real") return Place::real();
    return Place::finite(parse_bigint(s));
}

json big(const BigInt& v) {
    if (fits_i64(v)) return to_i64(v);
    return v.get_str();
}

json coords(const std::vector<BigInt>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(big(c));
    return a;
}

json flags_json(const LocalClassification& l) {
    json m = json::array();
    for (const auto& e : l.multiplicities) m.push_back(e.is_infinite() ? json("inf") : json(e.value()));
    return {{"multiplicities", m},      {"on_divisor_inf", l.on_divisor_inf}, {"strict", l.strict},
            {"integral", l.integral},   {"darmon", l.darmon},                 {"campana", l.campana},
            {"weak_campana", l.weak_campana}};
}

json profile_json(const InvariantProfile& p) {
    json w = json::array();
    for (const auto& x : p.witnesses)
        w.push_back({{"value", x.value.to_string()},
                     {"residue", coords(x.cls.coords)},
                     {"modulus", x.cls.prime.get_str() + "^" + std::to_string(x.cls.modulus_exponent)},
                     {"derivative_valuation", x.derivative_valuation},
                     {"hensel_variable", x.hensel_variable}});
    json samples = json::array();
    for (const auto& s : p.real_samples) samples.push_back(coords(s.coords));
    return {{"place", p.place.to_string()}, {"mode", p.mode.to_string()},   {"achieved", p.achieved_string()},
            {"empty", p.empty},             {"undecided", p.undecided},     {"depth_used", p.depth_used},
            {"exhaustive", p.exhaustive},   {"witnesses", w},               {"real_samples", samples}};
}

json report_json(const ObstructionReport& r) {
    json profiles = json::array();
    for (const auto& p : r.profiles) profiles.push_back(profile_json(p));
    json bad = json::array();
    for (const auto& p : r.bad_primes) bad.push_back(big(p));
    json out{{"mode", r.mode.to_string()},     {"obstructed", r.obstructed}, {"locally_empty", r.locally_empty},
             {"inconclusive", r.inconclusive}, {"bad_primes", bad},          {"prime_bound", r.prime_bound},
             {"profiles", profiles},           {"assumptions", r.assumptions}};
    if (r.zero_sum_witness) {
        json z = json::array();
        for (const auto& [pl, v] : *r.zero_sum_witness) z.push_back({{"place", pl.to_string()}, {"value", v.to_string()}});
        out["zero_sum_witness"] = z;
    } else {
        out["zero_sum_witness"] = nullptr;
    }
    return out;
}

json verdict_json(const MemberVerdict& v) {
    json d = json::array();
    for (const auto& c : v.darmon)
        d.push_back({{"m", c.m},
                     {"witness_residue_mod_125", coords(c.witness.residue)},
                     {"witness_lifted", coords(c.witness.lifted)},
                     {"lift_precision", c.witness.precision},
                     {"derivative_valuation", c.witness.derivative_valuation},
                     {"t_valuation", c.witness.t_valuation},
                     {"invariant", c.witness.invariant.to_string()},
                     {"certified", c.witness.certified},
                     {"obstructed", c.obstructed},
                     {"passed", c.passed()}});
    const auto& m = v.member;
    return {{"member", {m.a, m.b, m.c, m.d}},
            {"locally_soluble", v.locally_soluble},
            {"integral_obstructed", v.integral_obstructed},
            {"darmon", d},
            {"height_bound", v.height_bound},
            {"integral_point", v.integral_point ? coords(v.integral_point->coords) : json(nullptr)},
            {"passed", v.passed()}};
}

void emit(json j, const Common& c, const std::string& command) {
    j["schema"] = 1;
    j["command"] = command;
    std::cout << (c.pretty ? j.dump(2) : j.dump()) << "\n";
}

Mode make_mode(const ModeArgs& m) {
    return parse_mode(m.kind, m.kind == "integral" ? 0 : (m.weight ? m.weight : 2));
}

void add_common(CLI::App* sub, Common& c, bool model = true) {
    if (model) {
        sub->add_option("--model", c.model_path, "model JSON file");
        sub->add_option("--example", c.example, "use the model of a registered example");
    }
    sub->add_flag("--pretty", c.pretty, "indented output");
    sub->add_option("--jobs", c.jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
}

void add_mode(CLI::App* sub, ModeArgs& m) {
    sub->add_option("--mode", m.kind, "integral, darmon or campana")
        ->check(CLI::IsMember({"integral", "darmon", "campana"}));
    sub->add_option("--weight", m.weight, "weight m for darmon/campana (default 2)");
}

int print_table(const json& cases) {
    int failed = 0;
    for (const auto& c : cases) {
        std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<std::string>() << "  ("
                  << c["title"].get<std::string>() << ")\n";
        for (const auto& ch : c["checks"]) {
            std::cout << "  [" << (ch["pass"].get<bool>() ? "ok" : "FAIL") << "] " << ch["name"].get<std::string>()
                      << "\n        expected: " << ch["expected"].get<std::string>()
                      << "\n        observed: " << ch["observed"].get<std::string>()
                      << "\n        source:   " << ch["source"].get<std::string>() << "\n";
        }
        failed += !c["pass"].get<bool>();
    }
    return failed;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Semi-integral points on orbifolds: classification, local solubility, Brauer invariants, census"};
    app.require_subcommand(1);

    Common c;
    ModeArgs mode;
    std::string point, prime, flag = "any", a_str, b_str, resume, growth, id = "all";
    std::vector<std::string> targets;
    unsigned long weight = 0;
    int depth = 0;
    std::uint64_t height = 10, bound = 0, seed = 20240917, sample = 0, prime_bound = 50, lo = 2, hi = 100;
    bool strict = false, verify_all = false, no_verify = false, csv = false;
    std::vector<std::string> unit_forms;

    auto* classify = app.add_subcommand("classify", "intersection multiplicities and point flags");
    add_common(classify, c);
    classify->add_option("--point", point, "comma-separated integer coordinates")->required();
    classify->add_option("--prime", prime, "classify at this prime only");
    classify->add_option("--weight", weight, "override every divisor weight");

    auto* search = app.add_subcommand("search", "points of bounded height with a given flag");
    add_common(search, c);
    search->add_option("--height", height, "coordinate bound H");
    search->add_option("--flag", flag, "any, integral, darmon, campana, weak-campana");
    search->add_option("--weight", weight, "override every divisor weight");
    search->add_flag("--strict", strict, "drop points on the divisor");
    search->add_option("--target", targets, "residue target p,k,r0:r1:... (repeatable)");

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
    add_common(hilbert, c, false);
    hilbert->add_option("a", a_str, "integer or n/d")->required();
    hilbert->add_option("b", b_str, "integer or n/d")->required();
    hilbert->add_option("--prime", prime, "a prime or inf")->required();

    auto* solve = app.add_subcommand("solve-local", "primitive Z_p-points on the model's hypersurface");
    add_common(solve, c);
    solve->add_option("--prime", prime, "the prime p")->required();
    solve->add_option("--depth", depth, "maximal precision exponent (default 12)");
    solve->add_option("--unit-form", unit_forms, "restrict to points where this form is a unit (repeatable)");

    auto* invariant = app.add_subcommand("invariant", "local invariant at a point, or the invariant profile");
    add_common(invariant, c);
    invariant->add_option("--prime", prime, "a prime or inf")->required();
    invariant->add_option("--point", point, "evaluate at this point instead of profiling");
    invariant->add_option("--depth", depth, "profile depth (default 12 for p <= 5, else 6)");
    add_mode(invariant, mode);

    auto* obstruct = app.add_subcommand("obstruct", "adelic Brauer-Manin obstruction report");
    add_common(obstruct, c);
    add_mode(obstruct, mode);
    obstruct->add_option("--depth", depth, "profile depth");
    obstruct->add_option("--prime-bound", prime_bound, "profile every prime up to this bound");

    auto* harari = app.add_subcommand("harari", "primes with a two-valued invariant profile");
    add_common(harari, c);
    add_mode(harari, mode);
    harari->add_option("--lo", lo, "smallest prime");
    harari->add_option("--hi", hi, "largest prime");
    harari->add_option("--depth", depth, "profile depth");

    auto* census = app.add_subcommand("census", "count the lower-bound family and verify a sample");
    add_common(census, c, false);
    census->add_option("--bound", bound, "coefficient bound B");
    census->add_option("--growth", growth, "comma-separated bounds for the growth table");
    census->add_option("--seed", seed, "sampling seed");
    census->add_option("--sample", sample, "number of members to verify (default max(25, B-count/1000))");
    census->add_option("--height", height, "integral point search bound for verification")->default_val(200);
    census->add_option("--resume", resume, "checkpoint file (created or continued)");
    census->add_flag("--verify-all", verify_all, "verify every member");
    census->add_flag("--no-verify", no_verify, "count only");
    census->add_flag("--csv", csv, "print the growth table as CSV");

    auto* verify = app.add_subcommand("paper-verify", "re-verify registered worked examples");
    add_common(verify, c, false);
    verify->add_option("id", id, "example id or all");

    auto* list = app.add_subcommand("examples", "list registered examples");
    auto* exportm = app.add_subcommand("export-model", "print the model JSON of a registered example");
    exportm->add_option("id", id, "example id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify) {
            auto mf = load(c);
            override_weight(mf, weight);
            auto P = normalize_point(parse_int_list(point));
            if (!mf.model.on_ambient(P))
                throw Error(ErrorKind::PointNotOnAmbient, P.to_string() + " does not satisfy the model equations");
            json out{{"point", coords(P.coords)}};
            if (!prime.empty()) {
                BigInt p = parse_bigint(prime);
                out["prime"] = big(p);
                out["local"] = flags_json(classify_local(P, mf.model, p));
            } else {
                auto g = classify_global(P, mf.model);
                json per = json::object();
                for (const auto& [p, l] : g.per_prime) per[p.get_str()] = flags_json(l);
                json rel = json::array();
                for (const auto& p : g.relevant_primes) rel.push_back(big(p));
                out["global"] = {{"relevant_primes", rel}, {"per_prime", per},      {"generic", flags_json(g.generic)},
                                 {"on_divisor_inf", g.on_divisor_inf}, {"strict", g.strict}, {"integral", g.integral},
                                 {"darmon", g.darmon},   {"campana", g.campana}, {"weak_campana", g.weak_campana}};
            }
            emit(out, c, "classify");
        } else if (*search) {
            auto mf = load(c);
            override_weight(mf, weight);
            SearchOptions so;
            so.height = height;
            so.flag = parse_point_flag(flag);
            so.strict_only = strict;
            so.jobs = c.jobs;
            for (const auto& t : targets) {
                auto parts = std::vector<std::string>{};
                std::stringstream ss(t);
                std::string part;
                while (std::getline(ss, part, ',')) parts.push_back(part);
                if (parts.size() != 3) throw Error(ErrorKind::ParseError, "target must be p,k,r0:r1:...");
                so.targets.push_back({parse_bigint(parts[0]), std::stoi(parts[1]), parse_int_list(parts[2], ':')});
            }
            auto pts = search_points(mf.model, so);
            json arr = json::array();
            for (const auto& P : pts) arr.push_back(coords(P.coords));
            emit({{"height", height}, {"flag", to_string(so.flag)}, {"count", pts.size()}, {"points", arr}}, c, "search");
        } else if (*hilbert) {
            Place v = parse_place(prime);
            int s = hilbert_symbol(parse_rational(a_str), parse_rational(b_str), v);
            emit({{"a", a_str}, {"b", b_str}, {"place", v.to_string()}, {"symbol", s}}, c, "hilbert");
        } else if (*solve) {
            auto mf = load(c);
            if (mf.model.ambient_equations.size() != 1)
                throw Error(ErrorKind::Unsupported, "solve-local needs a model with exactly one equation");
            ZpOptions zo;
            if (depth > 0) zo.max_depth = depth;
            for (const auto& u : unit_forms) zo.unit_forms.push_back(Poly::parse(u, mf.model.names()));
            BigInt p = parse_bigint(prime);
            auto v = zp_points_on_hypersurface(mf.model.ambient_equations[0], p, zo);
            json out{{"prime", big(p)},
                     {"status", to_string(v.status)},
                     {"exhaustion_precision", v.exhaustion_precision},
                     {"bound_certified", v.bound_certified},
                     {"depth_reached", v.depth_reached}};
            if (auto b = quadric_exhaustion_bound(mf.model.ambient_equations[0], p)) out["quadric_bound"] = *b;
            if (v.certificate) {
                const auto& h = *v.certificate;
                out["certificate"] = {{"residue", coords(h.solution.coords)},
                                      {"precision", h.witness_precision},
                                      {"derivative_valuation", h.derivative_valuation},
                                      {"variable", h.variable}};
            }
            emit(out, c, "solve-local");
        } else if (*invariant) {
            auto mf = load(c);
            const auto& A = need_class(mf);
            Place v = parse_place(prime);
            if (!point.empty()) {
                auto P = normalize_point(parse_int_list(point));
                if (!mf.model.on_ambient(P))
                    throw Error(ErrorKind::PointNotOnAmbient, P.to_string() + " does not satisfy the model equations");
                auto val = invariant_at_point(A, P, v);
                emit({{"point", coords(P.coords)}, {"place", v.to_string()}, {"invariant", val.to_string()}}, c,
                     "invariant");
            } else {
                ProfileOptions po;
                po.max_depth = depth;
                po.stop_when_both = false;
                emit({{"profile", profile_json(invariant_profile(A, mf.model, v, make_mode(mode), po))}}, c,
                     "invariant");
            }
        } else if (*obstruct) {
            auto mf = load(c);
            ObstructionOptions oo;
            oo.jobs = c.jobs;
            oo.prime_bound = prime_bound;
            oo.profile.max_depth = depth;
            auto r = adelic_obstruction(need_class(mf), mf.model, make_mode(mode), oo);
            emit({{"report", report_json(r)}}, c, "obstruct");
            if (r.inconclusive) return 4;
        } else if (*harari) {
            auto mf = load(c);
            ProfileOptions po;
            po.max_depth = depth;
            auto h = harari_scan(need_class(mf), mf.model, make_mode(mode), lo, hi, po, c.jobs);
            json two = json::array(), inc = json::array();
            for (const auto& p : h.two_valued) two.push_back(big(p));
            for (const auto& p : h.inconclusive) inc.push_back(big(p));
            emit({{"mode", make_mode(mode).to_string()},
                  {"range", {lo, hi}},
                  {"primes_scanned", h.primes_scanned},
                  {"two_valued", two},
                  {"inconclusive", inc},
                  {"fraction", h.fraction()}},
                 c, "harari");
            if (!h.inconclusive.empty()) return 4;
        } else if (*census) {
            if (!growth.empty()) {
                std::vector<std::uint64_t> bs;
                for (const auto& b : parse_int_list(growth)) bs.push_back(to_u64(b));
                auto rows = growth_table(bs, c.jobs);
                if (csv) {
                    std::cout << "B,N,ratio\n";
                    for (const auto& r : rows) std::cout << r.bound << "," << r.count << "," << r.ratio << "\n";
                    return 0;
                }
                json arr = json::array();
                for (const auto& r : rows) arr.push_back({{"B", r.bound}, {"N", r.count}, {"ratio", r.ratio}});
                emit({{"growth", arr},
                      {"note", "ratio = N(B) / (B^{3/2} log B); the factor-3 band is an engineering choice"}},
                     c, "census");
            } else {
                if (bound == 0) throw Error(ErrorKind::ParseError, "census needs --bound or --growth");
                CensusOptions co;
                co.jobs = c.jobs;
                co.seed = seed;
                co.checkpoint = resume;
                co.verify = !no_verify;
                co.verify_all = verify_all;
                if (sample > 0) {
                    co.sample_floor = sample;
                    co.verify_fraction = 0.0;
                }
                co.verify_opts.height_bound = height;
                auto r = count_lower_bound(bound, co);
                json samples = json::array();
                for (const auto& v : r.samples) samples.push_back(verdict_json(v));
                json out{{"bound", r.bound}, {"count", r.count}, {"seed", seed}, {"elapsed", r.elapsed},
                         {"samples", samples}};
                if (r.resumed_from >= 0) out["resumed_after_a"] = r.resumed_from;
                emit(out, c, "census");
            }
        } else if (*verify) {
            std::vector<const ExampleCase*> cases;
            if (id == "all")
                for (const auto& e : example_registry()) cases.push_back(&e);
            else
                cases.push_back(&find_example(id));
            json arr = json::array();
            bool all = true;
            for (const auto* e : cases) {
                spdlog::info("verifying {}", e->id);
                json checks = json::array();
                bool pass = true;
                for (const auto& ch : e->run(c.jobs)) {
                    checks.push_back({{"name", ch.name},
                                      {"expected", ch.expected},
                                      {"observed", ch.observed},
                                      {"pass", ch.pass},
                                      {"source", ch.source}});
                    pass = pass && ch.pass;
                }
                all = all && pass;
                arr.push_back({{"id", e->id}, {"title", e->title}, {"pass", pass}, {"checks", checks}});
            }
            if (c.pretty)
                print_table(arr);
            else
                emit({{"cases", arr}, {"pass", all}}, c, "paper-verify");
            if (!all) return exit_code(ErrorKind::ExpectationFailed);
        } else if (*list) {
            json arr = json::array();
            for (const auto& e : example_registry()) arr.push_back({{"id", e.id}, {"title", e.title}});
            emit({{"examples", arr}}, c, "examples");
        } else if (*exportm) {
            std::cout << model_to_json(find_example(id).model).dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
