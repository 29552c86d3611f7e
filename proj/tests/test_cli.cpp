#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run opf(const std::string& args) {
  const std::string cmd = std::string(OPF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "opf_cli_test";

}  // namespace

TEST_CASE("verify-invariant") {
  const auto r = opf("verify-invariant --family hermite --n 3 --mu 1");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["exact"] == true);
  CHECK(j["cofactor"] == "v+2x");
  CHECK(j["remainder"] == "0");

  const auto bad = opf("verify-invariant --jacobi-shape --a 1 --lambda 2 --mu 1 --curve 'v'");
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["exact"] == false);
  CHECK(opf("verify-invariant --jacobi-shape --curve 'x-1'").code == 0);

  for (const char* fam : {"jacobi", "legendre", "chebyshev-t", "chebyshev-u", "gegenbauer", "laguerre-assoc",
                          "laguerre", "hermite"})
    for (int n : {0, 2, 5})
      CHECK(opf(std::string("verify-invariant --family ") + fam + " --n " + std::to_string(n) +
                " --mu -1/3 --alpha 1/2 --beta -1/2")
                .code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(opf("system --family hermite --n 0 --mu 0").code == 2);
  CHECK(opf("system --family nosuch --n 1").code == 2);
  CHECK(opf("system").code == 2);
  CHECK(opf("frobnicate").code == 2);
  CHECK(opf("").code == 2);
  CHECK(opf("system --family hermite --jacobi-shape").code == 2);
  CHECK(opf("system --family jacobi --alpha -2").code == 2);
  CHECK(opf("system --system-json /nonexistent.json").code == 2);
  CHECK(opf("system --system-json '{\"P\": \"v\"}'").code == 2);
  CHECK(opf("portrait --jacobi-shape --tol 0.1").code == 2);
  CHECK(opf("--help").code == 0);
}

TEST_CASE("system JSON round trips through --system-json") {
  std::filesystem::create_directories(tmp);
  for (const std::string sel : {"--family jacobi --n 3 --mu 2/3 --alpha 1/2 --beta 1",
                                "--jacobi-shape --a 1 --b 1/5 --lambda 6 --mu -1",
                                "--laguerre-shape --a 0 --b 1 --lambda 2 --mu 1"}) {
    const auto first = opf("system " + sel);
    REQUIRE(first.code == 0);
    std::ofstream(tmp / "sys.json") << first.out;
    const auto second = opf("system --system-json " + (tmp / "sys.json").string());
    CHECK(second.code == 0);
    CHECK(json::parse(second.out) == json::parse(first.out));
    const auto a = opf("critical-points --include-infinity " + sel);
    const auto b = opf("critical-points --include-infinity --system-json " + (tmp / "sys.json").string());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("darboux") {
  const auto r = opf("darboux --jacobi-shape --a 0 --b 0 --lambda 2 --mu 1 --s 1");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["lambdas"] == json({"-1/2", "1/2"}));
  CHECK(j["invariant"] == "sqrt(x-1)/sqrt(x+1)*exp(t)");
  CHECK(j["flow_check"]["max_drift"].get<double>() < 1e-6);
  CHECK(json::parse(opf("darboux --jacobi-shape --s 2").out)["lambdas"] == json({"-1", "1"}));
  CHECK(opf("darboux --jacobi-shape --s 0").code == 2);
  // no invariant lines, and the curve's cofactor alone cannot balance s
  CHECK(opf("darboux --family hermite --n 2 --mu 1").code == 1);
}

TEST_CASE("critical-points") {
  const auto fin = json::parse(opf("critical-points --jacobi-shape --a 1 --lambda 2 --mu 1").out);
  REQUIRE(fin.size() == 4);
  for (const auto& e : fin) {
    CHECK(e["chart"] == "finite");
    CHECK(e.contains("evidence"));
    CHECK_FALSE(e.contains("direction"));
  }
  const auto all = json::parse(opf("critical-points --jacobi-shape --a 1 --lambda 2 --mu 1 --include-infinity").out);
  REQUIRE(all.size() == 7);
  for (std::size_t i = 4; i < 7; ++i) {
    CHECK(all[i].contains("direction"));
    CHECK(all[i]["chart"] != "finite");
  }
  const auto nil = json::parse(opf("critical-points --laguerre-shape --a 1 --b 0 --lambda 2 --include-infinity").out);
  bool sawNilpotent = false;
  for (const auto& e : nil) sawNilpotent |= e["evidence"].value("type", "") == "nilpotent";
  CHECK(sawNilpotent);
}

TEST_CASE("chebyshev-integral") {
  const auto r = opf("chebyshev-integral --n 2 --mu 1 --check-flow");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["exact_residual_T"] == true);
  CHECK(j["drift_v"].get<double>() < 1e-6);
  CHECK(j["drift_w"].get<double>() < 1e-6);
  CHECK(j["bridge_roundtrip_err"].get<double>() < 1e-12);
  CHECK(opf("chebyshev-integral --n 2 --mu 0").code == 2);
}

TEST_CASE("portrait files are deterministic") {
  std::filesystem::create_directories(tmp);
  const auto svg1 = tmp / "a.svg", svg2 = tmp / "b.svg", csv = tmp / "a.csv", man = tmp / "m.json";
  const std::string sel = "--jacobi-shape --a 1 --lambda 2 --mu 1 --disk --grid 3";
  REQUIRE(opf("portrait " + sel + " --svg " + svg1.string() + " --csv " + csv.string() + " -o " + man.string()).code ==
          0);
  REQUIRE(opf("portrait " + sel + " --svg " + svg2.string()).code == 0);
  const auto a = slurp(svg1);
  CHECK(a == slurp(svg2));
  CHECK(a.find("<svg") != std::string::npos);
  const auto m = json::parse(slurp(man));
  CHECK(m["glyphs"]["finite"] == 4);
  CHECK(m["glyphs"]["boundary"] == 6);
  CHECK(m["files"]["svg"] == svg1.string());
  CHECK(slurp(csv).rfind("trajectory_id,t,v,x\n", 0) == 0);
}

TEST_CASE("selftest") {
  const auto ok = opf("selftest --json");
  CHECK(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j["pass"] == true);
  CHECK(j["criteria"].size() == 8);

  const auto bad = opf("selftest --json --corrupt-cofactor");
  CHECK(bad.code == 1);
  const auto b = json::parse(bad.out);
  CHECK(b["criteria"][0]["id"] == "A1");
  CHECK(b["criteria"][0]["pass"] == false);
  for (std::size_t i = 1; i < 8; ++i) CHECK(b["criteria"][i]["pass"] == true);
}
