#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "orbarith/census.hpp"
#include "orbarith/errors.hpp"
#include "support/oracles.hpp"

using namespace orbarith;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

CensusOptions count_only() {
    CensusOptions o;
    o.verify = false;
    return o;
}

}  // namespace

TEST_SUITE("census") {

TEST_CASE("member constraints") {
    CHECK(member_valid(41, 1, 1, 1));
    CHECK_FALSE(member_valid(81, 1, 1, 1));
    CHECK_FALSE(member_valid(41, 2, 1, 1));
    CHECK_FALSE(member_valid(-39, 1, 1, 1));
    CHECK_FALSE(member_valid(41, 1, 41, 1));
    CHECK_FALSE(member_valid(41, 5, 1, 1));
    CHECK_FALSE(member_valid(41, 1, 1, 0));
    CHECK_FALSE(member_valid(41, 1, 3, 3));
    CHECK(member_valid(41, 1, 2, 1));
    CHECK(member_valid(1, 3, 2, 7));
    CHECK(member_valid(41, -1, -1, -1));
}

TEST_CASE("member models") {
    const auto fm = member_to_model({41, 1, 1, 1}, Weight::finite(2));
    const auto& names = fm.model.var_names;
    CHECK(fm.model.ambient_equations.at(0) == Poly::parse("205*x^2 - 1025*y^2 + 16*z^2 - t^2", names));
    CHECK(fm.model.divisor.at(0).f == Poly::parse("t", names));
    CHECK(fm.model.divisor.at(0).weight == Weight::finite(2));
    CHECK(fm.cls.d == 5);
    REQUIRE(fm.cls.reps.size() == 2);

    const auto inf = member_to_model({41, 1, 1, 1}, Weight::infinity());
    CHECK(inf.model.divisor.at(0).weight.is_infinite());

    const auto c2 = member_to_model({41, 1, 2, 1}, Weight::finite(3));
    CHECK(c2.cls.d == 5);
    CHECK(c2.cls.reps[0].num == Poly::parse("t - 8*z", c2.model.var_names));
    CHECK(c2.cls.reps[1].num == Poly::parse("t + 8*z", c2.model.var_names));

    CHECK_THROWS_AS(member_to_model({41, 2, 1, 1}, Weight::finite(2)), Error);
    try {
        member_to_model({-39, 1, 1, 1}, Weight::finite(2));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidMember);
    }
}

TEST_CASE("count matches the quadruple-loop oracle") {
    CHECK(count_members(25) == 1);
    for (std::uint64_t B : {25ULL, 60ULL, 100ULL, 250ULL, 999ULL, 1000ULL, 1025ULL, 2500ULL, 5000ULL, 10000ULL}) {
        INFO("B = " << B);
        const auto expect = oracle::census_count(B);
        CHECK(count_members(B) == expect);
        CHECK(count_members_serial(B) == expect);
        CHECK(count_lower_bound(B, count_only()).count == expect);
    }
}

TEST_CASE("count is nondecreasing") {
    std::uint64_t prev = 0;
    for (std::uint64_t B = 25; B <= 20000; B += 125) {
        const auto n = count_members(B);
        REQUIRE(n >= prev);
        prev = n;
    }
}

TEST_CASE("signed b doubles the count") {
    for (std::uint64_t B : {100ULL, 1000ULL, 10000ULL}) CHECK(oracle::census_count(B, true) == 2 * count_members(B));
}

TEST_CASE("count is independent of sharding") {
    for (std::uint64_t B : {12345ULL, 100000ULL, 400000ULL}) {
        const auto serial = count_members_serial(B);
        for (int jobs : {1, 2, 3, 8}) CHECK(count_members(B, jobs) == serial);
    }
}

TEST_CASE("samples are deterministic valid members") {
    const auto a = sample_members(10000, 25, 20240917);
    const auto b = sample_members(10000, 25, 20240917);
    const auto c = sample_members(10000, 25, 7);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.size() == 25);
    std::set<std::string> seen;
    for (const auto& m : a) {
        CHECK(member_valid(m));
        CHECK(m.b > 0);
        CHECK(m.c > 0);
        CHECK(m.d > 0);
        CHECK(5 * m.a * m.b * m.b <= 10000);
        CHECK(25 * m.a * m.d * m.d <= 10000);
        CHECK(16 * m.c * m.c <= 10000);
        seen.insert(m.to_string());
    }
    CHECK(seen.size() == a.size());
    CHECK(sample_members(25, 10, 1).size() == 1);
}

TEST_CASE("checkpoint resume") {
    const std::uint64_t B = 1'000'000;
    const auto full = count_members(B);
    TempFile ck("orbarith_checkpoint_test.json");

    // A checkpoint covering a <= 1000, with the partial count from the oracle.
    {
        nlohmann::json j{{"schema", 1}, {"bound", B}, {"last_a", 1000}, {"count", oracle::census_count(B, false, 1000)}};
        std::ofstream(ck.path) << j.dump();
    }
    auto opts = count_only();
    opts.checkpoint = ck.path.string();
    const auto resumed = count_lower_bound(B, opts);
    CHECK(resumed.resumed_from == 1000);
    CHECK(resumed.count == full);

    nlohmann::json done;
    std::ifstream(ck.path) >> done;
    CHECK(done.at("count").get<std::uint64_t>() == full);
    CHECK(done.at("bound").get<std::uint64_t>() == B);

    // A completed checkpoint is read back without recounting.
    const auto again = count_lower_bound(B, opts);
    CHECK(again.count == full);
    CHECK(again.resumed_from == done.at("last_a").get<std::int64_t>());

    CHECK_THROWS_AS(count_lower_bound(B / 2, opts), Error);
}

TEST_CASE("bound below 25 is rejected") {
    CHECK_THROWS_AS(count_lower_bound(24, count_only()), Error);
}

TEST_CASE("growth table") {
    CHECK(growth_table({}).empty());
    const auto one = growth_table({1000});
    REQUIRE(one.size() == 1);
    CHECK(one[0].count == 54);
    CHECK(one[0].ratio == doctest::Approx(54.0 / (std::pow(1000.0, 1.5) * std::log(1000.0))));
}

TEST_CASE("Darmon witness at 5") {
    for (unsigned long m = 2; m <= 6; ++m) {
        const auto w = darmon_witness_at_5({41, 1, 1, 1}, m);
        CHECK(w.certified);
        CHECK(w.derivative_valuation == 1);
        CHECK(w.t_valuation == static_cast<int>(m));
        CHECK(w.invariant.half == 0);
        // The lifted point lies on the quadric modulo 5^precision.
        const auto fm = member_to_model({41, 1, 1, 1}, Weight::finite(m));
        const BigInt pk = pow_big(BigInt(5), static_cast<unsigned long>(w.precision));
        CHECK(oracle::mod(fm.model.ambient_equations[0].eval(w.lifted), pk) == 0);
        CHECK(w.residue == std::vector<BigInt>{5, 1, oracle::mod(-5, 125), m >= 3 ? BigInt(0) : BigInt(25)});
    }
    const auto w = darmon_witness_at_5({1, 3, 2, 7}, 3);
    CHECK(w.certified);
    CHECK(w.invariant.half == 0);
}

TEST_CASE("member verification") {
    VerifyOptions vo;
    vo.height_bound = 40;
    const auto v = verify_member({41, 1, 1, 1}, vo);
    CHECK(v.passed());
    CHECK(v.locally_soluble);
    CHECK(v.integral_obstructed);
    CHECK_FALSE(v.integral_point.has_value());
    REQUIRE(v.darmon.size() == 4);
    for (const auto& d : v.darmon) CHECK(d.passed());
    CHECK_THROWS_AS(verify_member({-39, 1, 1, 1}, vo), Error);
}

TEST_CASE("census with a verified sample") {
    CensusOptions o;
    o.sample_floor = 2;
    o.verify_opts.height_bound = 20;
    const auto r = count_lower_bound(1000, o);
    CHECK(r.count == 54);
    CHECK(r.samples.size() == 2);
    for (const auto& s : r.samples) CHECK(s.passed());
}

}
