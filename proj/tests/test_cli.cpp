#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lift/cli.hpp"

using namespace lift;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "lift");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("sequences")
{
    const auto r = run({"sequences", "--n", "2", "--l", "1"});
    REQUIRE(r.code == kPass);
    const auto j = json_of(r);
    REQUIRE(j["sequences"].size() == 2);
    CHECK(j["sequences"][0]["a"] == "1001");
    CHECK(j["sequences"][0]["s1"] == 2);
    CHECK(j["sequences"][0]["tilde"] == "101");
    CHECK(j["sequences"][1]["a"] == "1100");
    CHECK(j["sequences"][1]["s1"] == 3);
    CHECK(j["sequences"][1]["tilde"] == "110");

    const auto one = json_of(run({"sequences", "--n", "1", "--l", "1"}));
    REQUIRE(one["sequences"].size() == 1);
    CHECK(one["sequences"][0]["a"] == "100");

    CHECK(run({"sequences", "--n", "0", "--l", "1"}).code == kUsage);
    const auto pretty = run({"sequences", "--n", "2", "--l", "1", "--format", "pretty"});
    CHECK(pretty.code == kPass);
    CHECK(pretty.out.find("1100") != std::string::npos);
}

TEST_CASE("build")
{
    const auto p = run({"build", "psi-n1", "--n", "2"});
    REQUIRE(p.code == kPass);
    CHECK(json_of(p)["words"].size() == 2);
    const auto q = json_of(run({"build", "psi0", "--n", "2", "--l", "2"}));
    CHECK(q["words"].size() == 3);
    CHECK(q["arity"] == 5);
    CHECK(json_of(run({"build", "s-even", "--n", "2", "--l", "2"}))["words"].size() == 3);
    CHECK(json_of(run({"build", "psi-nl", "--n", "2", "--l", "2"}))["words"].size() == 5);
    CHECK(run({"build", "psi-n1", "--n", "1"}).code == kUsage);
    CHECK(run({"build", "nonsense", "--n", "2"}).code == kUsage);
}

TEST_CASE("build --out writes the same bytes as stdout")
{
    const auto path = std::filesystem::temp_directory_path() / "lift_cli_test_build.json";
    std::filesystem::remove(path);
    const auto r = run({"build", "psi-nl", "--n", "2", "--l", "2", "--out", path.string()});
    REQUIRE(r.code == kPass);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"build", "psi-nl", "--n", "2", "--l", "2"}).out);
    std::filesystem::remove(path);
    CHECK(run({"build", "psi0", "--n", "2", "--l", "1", "--out", "/nonexistent-dir/x.json"}).code == kIoError);
}

TEST_CASE("verify: passing examples")
{
    const auto t21 = run({"verify", "thm21", "--n", "2", "--backend", "matrix", "--N", "3", "--trials", "20", "--seed", "7"});
    CHECK(t21.code == kPass);
    const auto j = json_of(t21);
    CHECK(j["params"]["seed"] == 7);
    CHECK(j["trials"].size() == 20);
    CHECK(run({"verify", "thm11", "--n", "2", "--l", "1", "--backend", "matrix", "--commuting", "--trials", "20"}).code ==
          kPass);
    const auto bs = run({"verify", "bracket-series", "--cutoff", "3"});
    CHECK(bs.code == kPass);
    const auto coeffs = json_of(bs)["params"]["coefficients"];
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0] == nlohmann::json::array({1, 1}));
    CHECK(coeffs[1] == nlohmann::json::array({1, 2}));
    CHECK(coeffs[2] == nlohmann::json::array({2, 3}));
    CHECK(run({"verify", "axioms", "--n", "2", "--trials", "3"}).code == kPass);
    CHECK(run({"verify", "axioms", "--n", "1", "--backend", "psido", "--trials", "3"}).code == kPass);
    CHECK(run({"verify", "thm11", "--n", "2", "--l", "1", "--backend", "free"}).code == kPass);
    CHECK(run({"verify", "lemma12", "--n", "2", "--l", "2", "--trials", "1"}).code == kPass);
}

TEST_CASE("verify: failing checks exit 1")
{
    CHECK(run({"verify", "thm21", "--n", "2", "--N", "4", "--trials", "2", "--no-corrections"}).code == kCheckFailed);
    CHECK(run({"verify", "thm11", "--n", "2", "--l", "1", "--trials", "2"}).code == kCheckFailed);
    const auto r = run({"verify", "lemma111", "--n", "1", "--l", "1"});
    CHECK(r.code == kCheckFailed);
    CHECK(r.out.find("observed 3") != std::string::npos);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({"verify", "nonsense"}).code == kUsage);
    CHECK(run({"verify", "thm21", "--n", "2", "--backend", "free"}).code == kUsage);
    CHECK(run({"verify", "thm21", "--n", "2", "--format", "xml"}).code == kUsage);
    CHECK(run({"verify", "thm21", "--n", "2", "--trials", "abc"}).code == kUsage);
    CHECK(run({"verify", "bracket-series", "--cutoff", "4", "--window", "-3"}).code == kUsage);
    CHECK(run({}).code == kUsage);
    CHECK(run({"--help"}).code == kPass);
    const auto bad = run({"sequences", "--n", "0", "--l", "1"});
    CHECK(bad.err.find("--n") != std::string::npos);
}

TEST_CASE("oracle examples agree")
{
    CHECK(run({"oracle", "--n", "2", "--l", "1", "--trials", "10"}).code == kPass);
    CHECK(run({"oracle", "--n", "3", "--l", "1", "--trials", "5"}).code == kPass);
    CHECK(run({"oracle", "--n", "2", "--l", "2", "--trials", "3"}).code == kPass);
}

TEST_CASE("identical configurations give byte-identical reports")
{
    const std::vector<std::string> args{"verify", "thm23", "--n", "2", "--l", "1", "--trials", "3", "--seed", "5"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == kPass);
    CHECK(a.out == b.out);
    CHECK(json_of(a).contains("ms") == false);
    auto timed = args;
    timed.push_back("--timing");
    CHECK(json_of(run(timed)).contains("ms"));
    auto other = args;
    other.back() = "6";
    CHECK(run(other).out != a.out);
}
