#include <cmath>
#include <random>

#include "doctest.h"
#include "opf/darboux.hpp"
#include "opf/error.hpp"
#include "opf/portrait.hpp"

using namespace opf;
using namespace opf::portrait;

namespace {

const BiPoly v = BiPoly::v();
const BiPoly x = BiPoly::x();

int countOf(const std::string& s, const std::string& what) {
  int n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

struct Fixture {
  vfield::QuadSystem sys;
  std::vector<classify::CritReport> finite;
  std::vector<compactify::InfinityReport> infinity;
};

Fixture fixture(const vfield::QuadSystem& sys) {
  return {sys, classify::classifyFinite(sys), compactify::infinityCritPoints(sys)};
}

std::vector<vfield::QuadSystem> regressionGrid() {
  std::vector<vfield::QuadSystem> out;
  for (int a : {-1, 0, 1, 2}) out.push_back(vfield::buildParametricA(Rat(2), Rat(1), Rat(a)));
  out.push_back(vfield::buildParametricA(Rat(6), Rat(-1), Rat(1)));
  for (int a : {0, 2})
    for (int b : {0, 1}) out.push_back(vfield::buildParametricB(Rat(2), Rat(1), Rat(a), Rat(b)));
  return out;
}

}  // namespace

TEST_CASE("integrator on closed forms and invariant lines") {
  const auto lin = ode::integrate(ode::CompiledField({v, -x, {}, kDefaultNames}), 1.0, 1.0, 1.0);
  CHECK(lin.samples.back().v == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
  CHECK(lin.samples.back().x == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));

  const auto sys = vfield::buildParametricA(Rat(2), Rat(1), Rat(0));
  const ode::CompiledField f(sys);
  const auto on = ode::integrate(f, -0.3, 1.0, 1.0);
  for (const auto& s : on.samples) CHECK(std::abs(s.x - 1.0) < 1e-9);

  const auto fwd = ode::integrate(f, -0.5, 0.2, 1.0);
  REQUIRE(fwd.reason == ode::StopReason::Completed);
  const auto back = ode::integrate(f, fwd.samples.back().v, fwd.samples.back().x, -1.0);
  CHECK(std::hypot(back.samples.back().v + 0.5, back.samples.back().x - 0.2) < 1e-6);
  CHECK(ode::stopReasonName(fwd.reason) == "horizonReached");
}

TEST_CASE("disk map") {
  CHECK(diskMap(0, 0) == std::array<double, 2>{0, 0});
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> d(-50, 50);
  for (int k = 0; k < 200; ++k) {
    const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    const auto p = diskMap(a, b), q = diskMap(c, e);
    CHECK((std::hypot(p[0], p[1]) < std::hypot(q[0], q[1])) == (std::hypot(a, b) < std::hypot(c, e)));
    CHECK(std::hypot(p[0], p[1]) < 1.0);
    const auto back = diskUnmap(p[0], p[1]);
    CHECK(back[0] == doctest::Approx(a).epsilon(1e-9));
    CHECK(back[1] == doctest::Approx(b).epsilon(1e-9));
  }
  const double dv = 0.6, dx = -0.8;
  for (double t : {1e3, 1e6, 1e9}) {
    const auto p = diskMap(t * dv, t * dx);
    const double n = std::hypot(p[0], p[1]);
    CHECK(p[0] / n == doctest::Approx(dv));
    CHECK(p[1] / n == doctest::Approx(dx));
  }
  CHECK(std::hypot(diskMap(1e12, 0)[0], 0.0) == doctest::Approx(1.0));
}

TEST_CASE("invariant lines and seeds") {
  const auto A = vfield::buildParametricA(Rat(2), Rat(1), Rat(1));
  const auto lines = axisInvariantLines(A);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].axis == Var::X);
  CHECK(lines[0].c == -1.0);
  CHECK(lines[1].c == 1.0);
  const auto B = axisInvariantLines(vfield::buildParametricB(Rat(2), Rat(1), Rat(1), Rat(0)));
  REQUIRE(B.size() == 1);
  CHECK(B[0].c == 0.0);

  const auto fx = fixture(A);
  PortraitSpec spec;
  const auto w = fitWindow(fx.finite);
  const auto seeds = makeSeeds(A, spec, w, fx.finite);
  int sep = 0;
  for (const auto& s : seeds) sep += s.kind == SeedKind::Separatrix;
  CHECK(sep == 2 * 8);  // two saddles, four seeds each, both directions
  spec.maxTrajectories = 10;
  CHECK(makeSeeds(A, spec, w, fx.finite).size() == 10);

  spec.tol = 1e-2;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.tol = 1e-8;
  spec.maxTrajectories = 20000;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("glyph counts match the classifiers") {
  for (const auto& sys : regressionGrid()) {
    const auto fx = fixture(sys);
    for (bool disk : {false, true}) {
      PortraitSpec spec;
      spec.disk = disk;
      spec.gridSize = 3;
      const auto p = renderPortrait(sys, spec, fx.finite, fx.infinity);
      const int expected = static_cast<int>(fx.finite.size()) + (disk ? 2 * static_cast<int>(fx.infinity.size()) : 0);
      CHECK(countOf(p.svg, "class=\"glyph\"") == expected);
      CHECK(p.finiteGlyphs == static_cast<int>(fx.finite.size()));
      for (const auto& c : fx.finite)
        CHECK(countOf(p.svg, "data-kind=\"" + std::string(classify::kindName(c.cls.kind)) + "\" data-chart=\"finite\"") >= 1);
    }
  }
  // four finite glyphs and three direction classes (six boundary glyphs) for a = 1
  const auto fx = fixture(vfield::buildParametricA(Rat(2), Rat(1), Rat(1)));
  PortraitSpec disk;
  disk.disk = true;
  const auto p = renderPortrait(fx.sys, disk, fx.finite, fx.infinity);
  CHECK(p.finiteGlyphs == 4);
  CHECK(p.boundaryGlyphs == 6);
  CHECK(countOf(p.svg, "data-kind=\"Saddle\" data-chart=\"finite\"") == 2);

  const auto b = fixture(vfield::buildParametricB(Rat(2), Rat(1), Rat(0), Rat(1)));
  const auto pb = renderPortrait(b.sys, PortraitSpec{}, b.finite, b.infinity);
  CHECK(countOf(pb.svg, "data-chart=\"finite\"") == 1);
  CHECK(countOf(pb.svg, "data-kind=\"SaddleNode\" data-chart=\"finite\"") == 1);
}

TEST_CASE("empty spec renders glyphs only") {
  const auto fx = fixture(vfield::buildParametricA(Rat(2), Rat(1), Rat(2)));
  PortraitSpec spec;
  spec.maxTrajectories = 0;
  const auto p = renderPortrait(fx.sys, spec, fx.finite, fx.infinity);
  CHECK(p.trajectories.empty());
  CHECK(countOf(p.svg, "class=\"traj\"") == 0);
  CHECK(countOf(p.svg, "class=\"glyph\"") == 4);
  CHECK(p.csv == "trajectory_id,t,v,x\n");
}

TEST_CASE("rendering is deterministic and the parallel tracer matches the serial one") {
  const auto fx = fixture(vfield::buildParametricA(Rat(6), Rat(-1), Rat(1)));
  PortraitSpec spec;
  spec.disk = true;
  const auto a = renderPortrait(fx.sys, spec, fx.finite, fx.infinity);
  const auto b = renderPortrait(fx.sys, spec, fx.finite, fx.infinity);
  CHECK(a.svg == b.svg);
  CHECK(a.csv == b.csv);

  const auto w = fitWindow(fx.finite);
  const auto seeds = makeSeeds(fx.sys, spec, w, fx.finite);
  const auto par = traceAll(fx.sys, seeds, spec, w);
  const auto ser = traceAllSerial(fx.sys, seeds, spec, w);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    REQUIRE(par[i].samples.size() == ser[i].samples.size());
    CHECK(par[i].reason == ser[i].reason);
    CHECK(par[i].samples.back().v == ser[i].samples.back().v);
  }
}

TEST_CASE("Darboux invariant along rendered trajectories") {
  darboux::Problem p;
  p.system = vfield::buildParametricA(Rat(2), Rat(1), Rat(0));
  p.curves = {{x + BiPoly(1), BiPoly(1) - x}, {x - BiPoly(1), BiPoly(-1) - x}};
  const auto cert = *darboux::solveCofactorRelation(p, Rat(1));
  const auto fx = fixture(p.system);
  PortraitSpec spec;
  spec.tol = 1e-8;
  const auto pic = renderPortrait(p.system, spec, fx.finite, fx.infinity);
  int checked = 0;
  for (const auto& tr : pic.trajectories) {
    if (tr.seed.kind == SeedKind::InvariantLine) continue;
    const double i0 = std::abs(darboux::invariantValue(cert, tr.samples[0].v, tr.samples[0].x, tr.samples[0].t));
    double drift = 0;
    for (const auto& s : tr.samples)
      drift = std::max(drift, std::abs(std::abs(darboux::invariantValue(cert, s.v, s.x, s.t)) - i0) / i0);
    CHECK(drift < 1e-5);
    ++checked;
  }
  CHECK(checked > 20);
}
