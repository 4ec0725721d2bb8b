// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ousect/errors.hpp"
#include "ousect/io.hpp"

using namespace ousect;
namespace fs = std::filesystem;

namespace {

const char* cli_path() {
    const char* p = std::getenv("OUSECT_CLI");
    REQUIRE_MESSAGE(p != nullptr, "OUSECT_CLI must point at the binary");
    return p;
}

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("ousect-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    fs::path out = work_dir() / ("stdout." + std::to_string(counter));
    fs::path err = work_dir() / ("stderr." + std::to_string(counter));
    ++counter;
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" +
                      std::string(cli_path()) + "\" " + args + " > \"" +
                      out.string() + "\" 2> \"" + err.string() + "\"";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

bool fails_with(const char* code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("complex literal round trips") {
    CHECK(parse_complex("1+0i") == complexd{1.0, 0.0});
    CHECK(parse_complex("0.5-0.3i") == complexd{0.5, -0.3});
    CHECK(parse_complex("2") == complexd{2.0, 0.0});
    CHECK(parse_complex("-3.5") == complexd{-3.5, 0.0});
    CHECK(parse_complex("3i") == complexd{0.0, 3.0});
    CHECK(parse_complex("i") == complexd{0.0, 1.0});
    CHECK(parse_complex("-i") == complexd{0.0, -1.0});
    CHECK(parse_complex(" 1e-3+2e2i ") == complexd{1e-3, 2e2});
    CHECK(fails_with("invalid-argument", [] { parse_complex("1+2"); }));
    CHECK(fails_with("invalid-argument", [] { parse_complex("abc"); }));
    CHECK(fails_with("invalid-argument", [] { parse_complex(""); }));
    CHECK(fails_with("invalid-argument", [] { parse_complex("i5"); }));

    for (complexd v : {complexd{0.25, -1.5}, complexd{-3.0, 0.0},
                       complexd{1e-3, 2e2}, complexd{0.0, -0.125}})
        CHECK(parse_complex(format_complex(v)) == v);
}

TEST_CASE("kernel identity command") {
    CHECK(run("verify-kernel-identity --samples 2000 --out \"" +
              (work_dir() / "ki.json").string() + "\"")
              .exit_code == 0);
    json j = json::parse(slurp(work_dir() / "ki.json"));
    CHECK(j["pass"] == true);
    CHECK(j["command"] == "verify-kernel-identity");
    CHECK(j["samples"] == 2000);
    CHECK(j["max_rel_error"].get<double>() <= 1e-12);

    SUBCASE("unknown flags are parse errors") {
        RunResult r = run("verify-kernel-identity --p 4");
        CHECK(r.exit_code == 1);
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("an unattainable tolerance fails honestly") {
        RunResult r =
            run("verify-kernel-identity --samples 500 --tolerance 1e-30");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("kernel identity breach") != std::string::npos);
    }
}

TEST_CASE("defaults table") {
    RunResult r = run("--show-defaults");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["tolerances"]["kernel_identity"].get<double>() == 1e-12);
    CHECK(j["tolerances"]["contraction_slack"].get<double>() == 1e-3);
    CHECK(j["grids"]["apply"]["d1"]["radius"].get<double>() == 10.0);
    CHECK(j["grids"]["norm"]["d1"]["step"].get<double>() == 0.05);
    CHECK(j["seed"].get<int>() == 42);
    CHECK(j["domain"]["epsilon"].get<double>() == 0.05);
}

TEST_CASE("no or unknown subcommand") {
    CHECK(run("").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("domination command and report determinism") {
    fs::path a = work_dir() / "dom-a.json";
    fs::path b = work_dir() / "dom-b.json";
    std::string base =
        "domination --p 4 --z 1+0i --grid-radius 3 --grid-step 0.05 --out ";
    REQUIRE(run(base + "\"" + a.string() + "\"").exit_code == 0);
    REQUIRE(run(base + "\"" + b.string() + "\"").exit_code == 0);

    json j = json::parse(slurp(a));
    CHECK(j["command"] == "domination");
    CHECK(j["pass"] == true);
    CHECK(j["min_margin"].get<double>() >= -1e-12);
    CHECK(j["samples"].get<long long>() == 121 * 121);
    CHECK(slurp(a) == slurp(b));  // identical config => identical bytes
}

TEST_CASE("domain map raster") {
    fs::path csv = work_dir() / "map.csv";
    RunResult r = run("domain-map --p 2 --window 0.1,3,-1.5,1.5 --res 40 "
                      "--out \"" +
                      csv.string() + "\"");
    REQUIRE(r.exit_code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("re,im,label\n", 0) == 0);
    std::size_t rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == 1 + 40 * 40);
    json meta = json::parse(slurp(work_dir() / "map.csv.meta.json"));
    CHECK(meta["resolution"]["nx"] == 40);
    CHECK(meta["window"]["re_min"].get<double>() == 0.1);

    SUBCASE("a backwards window is rejected before rasterizing") {
        CHECK(run("domain-map --p 2 --window 3,0.1,-1.5,1.5 --res 40")
                  .exit_code == 1);
    }
    SUBCASE("json format carries the labels inline") {
        fs::path jf = work_dir() / "map.json";
        REQUIRE(run("domain-map --p 2 --window 0.1,3,-1.5,1.5 --res 12 "
                    "--format json --out \"" +
                    jf.string() + "\"")
                    .exit_code == 0);
        json j = json::parse(slurp(jf));
        CHECK(j["labels"].size() == 12 * 12);
    }
}

TEST_CASE("norm scan command") {
    SUBCASE("real times certify contraction") {
        fs::path f = work_dir() / "ns.json";
        RunResult r = run(
            "norm-scan --p 4 --t 0.1,1 --grid-radius 6 --grid-step 0.1 "
            "--out \"" +
            f.string() + "\"");
        REQUIRE(r.exit_code == 0);
        json j = json::parse(slurp(f));
        CHECK(j["mode"] == "contraction");
        REQUIRE(j["runs"].size() == 2);
        for (const auto& run_j : j["runs"]) {
            CHECK(run_j["upper"].get<double>() <= 1.0 + 1e-3);
            CHECK(run_j["contractive"] == true);
        }
    }
    SUBCASE("exactly one of the two time forms") {
        CHECK(run("norm-scan --p 4 --t 1 --z 1+0i").exit_code == 1);
        CHECK(run("norm-scan --p 4").exit_code == 1);
    }
    SUBCASE("an inadmissible complex time cannot be bounded") {
        RunResult r = run(
            "norm-scan --p 4 --z 0.05+3i --grid-radius 6 --grid-step 0.1");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("remaining verification commands run clean") {
    CHECK(run("verify-semigroup --t 0.3 --s 0.7 --max-degree 2 "
              "--grid-radius 8 --grid-step 0.1")
              .exit_code == 0);
    CHECK(run("verify-spectral --z 0.5+0.3i --max-degree 4 --grid-radius 8 "
              "--grid-step 0.1")
              .exit_code == 0);
    CHECK(run("sup-bound --p 4 --samples 200").exit_code == 0);
    CHECK(run("containment --p 4 --samples 500").exit_code == 0);
    CHECK(run("blowup-probe --p 4 --target-deg 75 --s-moduli 0.3 "
              "--a-grid 7 --rounds 4")
              .exit_code == 0);
}

TEST_CASE("default output directory env var") {
    fs::path dir = work_dir() / "envout";
    fs::create_directories(dir);
    RunResult r = run("sup-bound --p 2 --samples 100",
                      "OUSECT_OUT_DIR=\"" + dir.string() + "\"");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(slurp(dir / "sup-bound.json"));
    CHECK(j["chain_holds"] == true);
    CHECK(j["samples"] == 100);
}
