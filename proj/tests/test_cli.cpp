#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string binary() {
    const char* env = std::getenv("GPTCOMPAT_BIN");
    REQUIRE_MESSAGE(env != nullptr, "GPTCOMPAT_BIN must point at the CLI binary");
    return env;
}

RunResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        "'" + binary() + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "gptcompat_cli_test_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const std::string kEffectX = R"({"effect": {"linear": [1, 0], "offset": 0}})";
const std::string kEffectY = R"({"effect": {"linear": [0, 1], "offset": 0}})";

}  // namespace

TEST_CASE("analyze reports the expected counts for the built-in shapes") {
    const RunResult tri = run("analyze --shape ngon:3");
    REQUIRE(tri.exit_code == 0);
    const auto jt = nlohmann::json::parse(tri.out);
    CHECK(jt["is_simplex"].get<bool>());
    CHECK(jt["facet_count"].get<int>() == 3);

    const auto js = nlohmann::json::parse(run("analyze --shape hypercube:2").out);
    CHECK_FALSE(js["is_simplex"].get<bool>());
    CHECK(js["facet_count"].get<int>() == 4);

    const auto jo = nlohmann::json::parse(run("analyze --shape crosspolytope:3").out);
    CHECK(jo["vertex_count"].get<int>() == 6);
    CHECK(jo["facet_count"].get<int>() == 8);
    CHECK_FALSE(jo["is_simplex"].get<bool>());
    for (const auto& v : jo["vertices"]) {
        CHECK(v["containing_facets"].get<int>() >= 1);
        CHECK(v["disjoint_facets"].get<int>() >= 1);
    }

    CHECK(run("analyze --shape frobnicate:9").exit_code == 1);
}

TEST_CASE("degree exit codes distinguish compatible from incompatible") {
    const TempFile m1(kEffectX);
    const TempFile m2(kEffectY);

    const RunResult sq = run("degree --shape hypercube:2 --m1 " + m1.path + " --m2 " + m2.path);
    CHECK(sq.exit_code == 2);
    const auto jd = nlohmann::json::parse(sq.out);
    CHECK(jd["lambda"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(jd["mu"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(!jd["certificate"].is_null());
    CHECK(jd["certificate"]["violation"].get<double>() > 1e-8);

    const RunResult tri = run("degree --shape simplex:2 --m1 " + m1.path + " --m2 " + m2.path);
    CHECK(tri.exit_code == 0);
    CHECK(nlohmann::json::parse(tri.out)["lambda"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));

    const RunResult free_coin = run("degree --shape hypercube:2 --free-coin --m1 " + m1.path +
                                    " --m2 " + m2.path);
    CHECK(free_coin.exit_code == 2);
    CHECK(nlohmann::json::parse(free_coin.out)["lambda"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-7));

    const TempFile bad(R"({"effect": {"linear": [2, 0], "offset": 0}})");
    CHECK(run("degree --shape hypercube:2 --m1 " + bad.path + " --m2 " + m2.path).exit_code == 1);

    const TempFile malformed(R"({"effect": {"linear": [1, 0)");
    const RunResult mal = run(
        "degree --shape hypercube:2 --m1 " + malformed.path + " --m2 " + m2.path, true);
    CHECK(mal.exit_code == 1);
    CHECK(mal.out.find("ParseError") != std::string::npos);

    CHECK(run("degree --shape hypercube:2 --m1 nope.json --m2 " + m2.path).exit_code == 1);
}

TEST_CASE("witness emits a verified pair and refuses simplices with exit 3") {
    const RunResult sq = run("witness --shape hypercube:2");
    REQUIRE(sq.exit_code == 0);
    const auto j = nlohmann::json::parse(sq.out);
    CHECK(j["degree"]["lambda"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    CHECK(j["verified_violation"].get<double>() > 1e-8);
    CHECK(j["m1"].contains("effect"));
    CHECK(j["m2"].contains("effect"));
    CHECK(!j["degree"]["certificate"].is_null());

    const RunResult tri = run("witness --shape simplex:3", true);
    CHECK(tri.exit_code == 3);
    CHECK(tri.out.find("compatible") != std::string::npos);

    CHECK(run("witness --shape ngon:6").exit_code == 0);
}

TEST_CASE("sweep prints deterministic CSV with the documented header") {
    const RunResult a = run("sweep --family ngon --n-min 4 --n-max 16 --step 4");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out.rfind("param,lambda,mu,violation\n", 0) == 0);
    CHECK(a.out.find("\r") == std::string::npos);

    // 4 rows plus header.
    int lines = 0;
    for (char c : a.out) lines += c == '\n';
    CHECK(lines == 5);

    // First row: the diamond's axes pair is compatible.
    const std::string first_row = a.out.substr(a.out.find('\n') + 1);
    CHECK(first_row.rfind("4,1,0,0\n", 0) == 0);

    const RunResult b = run("sweep --family ngon --n-min 4 --n-max 16 --step 4");
    CHECK(a.out == b.out);  // byte-identical rerun

    const RunResult empty = run("sweep --n-min 10 --n-max 4");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out == "param,lambda,mu,violation\n");

    const RunResult rnd = run("sweep --family random --dim 2 --vertices 6 --runs 2 --seed 7");
    REQUIRE(rnd.exit_code == 0);
    const RunResult rnd2 = run("sweep --family random --dim 2 --vertices 6 --runs 2 --seed 7");
    CHECK(rnd.out == rnd2.out);
    CHECK(rnd.out.rfind("param,lambda,mu,violation\n7,", 0) == 0);

    const RunResult js = run("sweep --family ngon --n-min 4 --n-max 4 --output json");
    REQUIRE(js.exit_code == 0);
    const auto arr = nlohmann::json::parse(js.out);
    REQUIRE(arr.is_array());
    CHECK(arr[0]["param"].get<int>() == 4);
    CHECK(arr[0]["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analyze --dump round trips through file shapes") {
    const std::string dumped = "gptcompat_cli_dump.json";
    const RunResult direct = run("analyze --shape crosspolytope:3 --dump " + dumped);
    REQUIRE(direct.exit_code == 0);
    const RunResult reloaded = run("analyze --shape file:" + dumped);
    CHECK(reloaded.exit_code == 0);
    CHECK(direct.out == reloaded.out);
    std::remove(dumped.c_str());
}

TEST_CASE("joint subcommand drives all three constructions") {
    const TempFile m1(kEffectX);
    const TempFile m2(kEffectY);
    const TempFile p0(R"({"linear": [0, 0], "offset": 0})");

    const RunResult fp = run("joint --shape simplex:2 --method from-p --m1 " + m1.path +
                             " --m2 " + m2.path + " --p " + p0.path);
    REQUIRE(fp.exit_code == 0);
    const auto j = nlohmann::json::parse(fp.out);
    CHECK(j["g11"]["offset"].get<double>() == doctest::Approx(0.0));
    CHECK(j["g22"]["offset"].get<double>() == doctest::Approx(1.0));

    // p = 0 is infeasible for the sharp square pair.
    CHECK(run("joint --shape hypercube:2 --method from-p --m1 " + m1.path + " --m2 " +
              m2.path + " --p " + p0.path)
              .exit_code == 1);

    const RunResult hc = run("joint --shape hypercube:2 --method half-coin --m1 " + m1.path +
                             " --m2 " + m2.path + " --t1 0.3 --t2 0.7");
    REQUIRE(hc.exit_code == 0);
    const auto hj = nlohmann::json::parse(hc.out);
    for (const char* key : {"g11", "g12", "g21", "g22"}) CHECK(hj.contains(key));

    const TempFile fm1(
        R"({"outcomes": ["0", "1"],
            "effects": [{"linear": [1, 0], "offset": 0}, {"linear": [-1, 0], "offset": 1}]})");
    const TempFile fm2(
        R"({"outcomes": ["0", "1"],
            "effects": [{"linear": [0, 1], "offset": 0}, {"linear": [0, -1], "offset": 1}]})");
    const RunResult pr = run("joint --shape simplex:2 --method product --m1 " + fm1.path +
                             " --m2 " + fm2.path);
    REQUIRE(pr.exit_code == 0);
    const auto pj = nlohmann::json::parse(pr.out);
    REQUIRE(pj["effects"].size() == 4);
    CHECK(pj["outcomes"][0].get<std::string>() == "0,0");

    // Products require a simplex.
    CHECK(run("joint --shape hypercube:2 --method product --m1 " + fm1.path + " --m2 " +
              fm2.path)
              .exit_code == 1);
}

TEST_CASE("GPTCOMPAT_TOL is honored and validated") {
    const RunResult ok = run("analyze --shape ngon:3");
    const std::string cmd = "GPTCOMPAT_TOL=1e-8 '" + binary() + "' analyze --shape ngon:3";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(out == ok.out);

    FILE* bad = popen(("GPTCOMPAT_TOL=oops '" + binary() + "' analyze --shape ngon:3 2>/dev/null").c_str(), "r");
    REQUIRE(bad != nullptr);
    while (fread(buf, 1, sizeof(buf), bad) > 0) {}
    CHECK(WEXITSTATUS(pclose(bad)) == 1);
}
