#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ORBARITH_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expect_code = 0) {
    const auto r = run(args);
    INFO(args);
    REQUIRE(r.code == expect_code);
    json j = json::parse(r.out);
    CHECK(j.at("schema") == 1);
    return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify") {
    auto j = run_json("classify --example p1-automorphism --point 4,1 --prime 2");
    CHECK(j["local"]["campana"] == true);
    j = run_json("classify --example p1-automorphism --point 2,1 --prime 2");
    CHECK(j["local"]["campana"] == false);
    j = run_json("classify --example intro-quadric --point 1,1,4,16 --weight 2");
    CHECK(j["global"]["darmon"] == true);
    CHECK(run("classify --example p1-automorphism --point x").code == 2);
    CHECK(run("classify --example intro-quadric --point 1,0,0,0").code == 3);
    CHECK(run("classify --example no-such-example --point 1,1").code == 2);
    CHECK(run("classify --example p1-automorphism --point 4,1 --prime 4").code == 3);
}

TEST_CASE("hilbert") {
    CHECK(run_json("hilbert 2 5 --prime 5")["symbol"] == -1);
    CHECK(run_json("hilbert -1 -1 --prime inf")["symbol"] == -1);
    CHECK(run_json("hilbert 3 -1 --prime 3")["symbol"] == -1);
    CHECK(run("hilbert 0 5 --prime 5").code == 3);
    CHECK(run("hilbert two 5 --prime 5").code == 2);
}

TEST_CASE("local solubility and invariants") {
    auto j = run_json("solve-local --example intro-quadric --prime 2 --unit-form t");
    CHECK(j["status"] == "YES");
    const auto path = std::filesystem::temp_directory_path() / "orbarith_cli_sum3.json";
    std::ofstream(path) << R"({"schema": 1, "ambient_dim": 2, "equations": ["x0^2 + x1^2 + x2^2"]})";
    CHECK(run_json("solve-local --model " + path.string() + " --prime 2")["status"] == "NO");
    CHECK(run_json("solve-local --model " + path.string() + " --prime 3")["status"] == "YES");
    std::filesystem::remove(path);
    j = run_json("invariant --example quadrics-even --point 1,0,0,3 --prime 7");
    CHECK(j["invariant"] == "0");
}

TEST_CASE("obstruction and exit codes are stable") {
    const auto a = run("obstruct --example quadrics-even --mode darmon --weight 4");
    const auto b = run("obstruct --example quadrics-even --mode darmon --weight 4");
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["report"]["obstructed"] == true);
    CHECK(run("obstruct --example quadrics-even --mode darmon --weight 1").code == 3);
    CHECK(run("obstruct --example p1-automorphism --mode darmon --weight 2").code == 2);
}

TEST_CASE("census") {
    const auto j = run_json("census --bound 1000 --no-verify");
    CHECK(j["count"] == 54);
    const auto g = run_json("census --growth 1000,10000");
    CHECK(g["growth"].size() == 2);
    CHECK(run("census --bound 10 --no-verify").code == 2);
}

TEST_CASE("paper-verify and model export") {
    CHECK(run_json("paper-verify dwa")["pass"] == true);
    CHECK(run("paper-verify no-such-example").code == 2);

    const auto model = run("export-model dwa");
    REQUIRE(model.code == 0);
    const auto path = std::filesystem::temp_directory_path() / "orbarith_cli_model.json";
    std::ofstream(path) << model.out;
    const auto j = run_json("classify --model " + path.string() + " --point 0,0,1,4 --prime 2");
    CHECK(j["local"]["integral"] == false);
    std::filesystem::remove(path);
}

TEST_CASE("unknown options are input errors") {
    CHECK(run("classify --bogus").code == 2);
    CHECK(run("").code != 0);
}

}
