#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#ifdef TORUSMONO_CLI_PATH

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Reports go to stdout and error objects to stderr.
Run run(const std::string& args, bool want_stderr = false) {
  std::string cmd = std::string(TORUSMONO_CLI_PATH) + " " + args + (want_stderr ? " 2>&1 >/dev/null" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

void check_report_shape(const nlohmann::json& j) {
  for (const char* key : {"command", "seed", "inputs", "outputs", "residuals", "tolerances", "pass", "passed", "timing"})
    CHECK_MESSAGE(j.contains(key), key);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("weierstrass report") {
    Run r = run("weierstrass --tau 0,1 --u 0.2,0.1");
    REQUIRE(r.status == 0);
    auto j = parse(r);
    check_report_shape(j);
    CHECK(j["command"] == "weierstrass");
    CHECK(j["passed"] == true);
    auto g3 = j["outputs"]["g3"];
    REQUIRE(g3.is_array());
    CHECK(std::abs(g3[0].get<double>()) < 1e-12);
    CHECK(std::abs(j["outputs"]["g2"][0].get<double>() - 189.0727201292) < 1e-8);
  }

  TEST_CASE("monodromy report") {
    Run r = run("monodromy --tau 0,1 --u0 0.3,0.2 --c 0.1,0 --method both");
    REQUIRE(r.status == 0);
    auto j = parse(r);
    check_report_shape(j);
    CHECK(j["passed"] == true);

    Run z = run("monodromy --tau 0,1 --u0 0,0 --c0 0.5,0 --method closed");
    REQUIRE(z.status == 0);
    auto x = parse(z)["outputs"]["closed"]["x"];
    CHECK(std::abs(x[0].get<double>() - std::exp(0.5)) < 1e-12);
  }

  TEST_CASE("exit codes") {
    CHECK(run("monodromy --tau 0,1 --u0 0.3,0.2 --c 0.1,0 --method both --tol 1e-30").status == 1);
    CHECK(run("").status == 2);
    CHECK(run("weierstrass --bogus").status == 2);
    CHECK(run("monodromy --tau 0,1 --u0 0.3,0.2 --c 0.1,0 --c0 1,0").status == 2);
    Run bad = run("weierstrass --tau 0,-1", true);
    CHECK(bad.status == 3);
    CHECK(parse(bad).contains("error"));
    CHECK(run("monodromy --tau 0,1 --u0 1,1 --c 0,0 --method closed").status == 3);
  }

  TEST_CASE("other subcommands") {
    for (const char* args : {"group-law --tau 0,1 --p1 main 0.2,0.1 0.3,0 --p2 main 0.1,0.3 0,0.2",
                             "rh-inverse --tau 0,1 --x 2,0.5 --y 0.3,1 --start main 0.2,0.2 0,0",
                             "affine --tau 0,1 --c 1,0 --u 0.2,0.1 --pair 0 1 0,2",
                             "bundle --g 2 --e 0 --d 0 --n 1",
                             "bundle --classify dihedral --tau 0,1",
                             "bundle --case same_fiber_generic --u0 0.3,0.2 --tau 0,1"}) {
      Run r = run(args);
      INFO(args);
      REQUIRE(r.status == 0);
      auto j = parse(r);
      check_report_shape(j);
      CHECK(j["passed"] == true);
    }
    auto d = parse(run("bundle --classify dihedral --tau 0,1"));
    CHECK(d.dump().find("Pminus1") != std::string::npos);
  }

  TEST_CASE("reports are deterministic apart from timing") {
    auto a = parse(run("--seed 7 verify --suite bundles"));
    auto b = parse(run("--seed 7 verify --suite bundles"));
    CHECK(a["seed"] == 7);
    a.erase("timing");
    b.erase("timing");
    auto strip = [](nlohmann::json& j) {
      if (j.contains("outputs") && j["outputs"].contains("criteria"))
        for (auto& c : j["outputs"]["criteria"]) c.erase("seconds");
    };
    strip(a);
    strip(b);
    CHECK(a == b);
  }
}

#endif
