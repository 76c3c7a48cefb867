#include <doctest.h>

#include <json.hpp>

#include "orbarith/errors.hpp"
#include "orbarith/model_io.hpp"
#include "orbarith/registry.hpp"

using namespace orbarith;
using nlohmann::json;

namespace {

ErrorKind kind_of(const json& j) {
    try {
        model_from_json(j);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Unsupported;
}

json p1_json() {
    return json{{"schema", 1}, {"ambient_dim", 1}, {"variables", {"x", "y"}}, {"divisor", {{{"form", "x"}, {"weight", 2}}}}};
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("registry models round-trip") {
    for (const auto& ex : example_registry()) {
        INFO(ex.id);
        const json j = model_to_json(ex.model);
        const auto back = model_from_json(json::parse(j.dump()));
        CHECK(back.model.ambient_dim == ex.model.model.ambient_dim);
        CHECK(back.model.ambient_equations == ex.model.model.ambient_equations);
        REQUIRE(back.model.divisor.size() == ex.model.model.divisor.size());
        for (std::size_t i = 0; i < back.model.divisor.size(); ++i) {
            CHECK(back.model.divisor[i].f == ex.model.model.divisor[i].f);
            CHECK(back.model.divisor[i].weight == ex.model.model.divisor[i].weight);
        }
        CHECK(back.model.excluded_places == ex.model.model.excluded_places);
        REQUIRE(back.cls.has_value() == ex.model.cls.has_value());
        if (back.cls) {
            CHECK(back.cls->d == ex.model.cls->d);
            REQUIRE(back.cls->reps.size() == ex.model.cls->reps.size());
            for (std::size_t i = 0; i < back.cls->reps.size(); ++i) {
                CHECK(back.cls->reps[i].num == ex.model.cls->reps[i].num);
                CHECK(back.cls->reps[i].den == ex.model.cls->reps[i].den);
                CHECK(back.cls->reps[i].second_num == ex.model.cls->reps[i].second_num);
            }
        }
        CHECK(model_to_json(back) == j);
    }
}

TEST_CASE("coefficient maps and expressions agree") {
    const std::vector<std::string> names{"x", "y", "z", "t"};
    const json map = {{"2,0,0,0", 49}, {"0,2,0,0", -7}, {"0,0,2,0", "16"}, {"0,0,0,2", -1}};
    CHECK(poly_from_json(map, names) == Poly::parse("49*x^2 - 7*y^2 + 16*z^2 - t^2", names));
    const Poly f = Poly::parse("3*(x-y)*(x+y) - (t-4*z)*(t+4*z)", names);
    CHECK(poly_from_json(poly_to_json(f), names) == f);
    const json huge = {{"1,0,0,0", "123456789012345678901234567890"}};
    CHECK(poly_from_json(huge, names).terms().begin()->second == BigInt("123456789012345678901234567890"));
}

TEST_CASE("infinite weights and excluded places") {
    json j = p1_json();
    j["divisor"][0]["weight"] = "inf";
    j["excluded_places"] = {3, "5"};
    const auto m = model_from_json(j);
    CHECK(m.model.divisor[0].weight.is_infinite());
    CHECK(m.model.excluded_places == std::set<BigInt>{3, 5});
}

TEST_CASE("malformed models") {
    json j = p1_json();
    j.erase("ambient_dim");
    CHECK(kind_of(j) == ErrorKind::ParseError);

    j = p1_json();
    j["divisor"][0]["weight"] = 0;
    CHECK(kind_of(j) == ErrorKind::ParseError);

    j = p1_json();
    j["divisor"][0]["form"] = {{"1,0,0", 1}};
    CHECK(kind_of(j) == ErrorKind::ParseError);

    j = p1_json();
    j["divisor"][0]["form"] = {{"a,0", 1}};
    CHECK(kind_of(j) == ErrorKind::ParseError);

    j = p1_json();
    j["schema"] = 2;
    CHECK(kind_of(j) == ErrorKind::ParseError);

    j = p1_json();
    j["divisor"][0]["form"] = "x^2 + y";
    CHECK(kind_of(j) == ErrorKind::InvalidModel);

    j = p1_json();
    j["divisor"][0]["form"] = "2*x";
    CHECK(kind_of(j) == ErrorKind::InvalidModel);

    j = p1_json();
    j["brauer"] = {{"d", 0}, {"representatives", {{{"num", "x"}, {"den", "y"}}}}};
    CHECK(kind_of(j) == ErrorKind::InvalidModel);

    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), Error);
}

}
