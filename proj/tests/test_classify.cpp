#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "opf/classify.hpp"
#include "opf/error.hpp"

using namespace opf;
using namespace opf::classify;

namespace {

const BiPoly v = BiPoly::v();
const BiPoly x = BiPoly::x();

vfield::QuadSystem field(const BiPoly& P, const BiPoly& Q) { return {P, Q, {}, kDefaultNames}; }

std::map<Kind, int> kindCount(const std::vector<CritReport>& reps) {
  std::map<Kind, int> out;
  for (const auto& r : reps) ++out[r.cls.kind];
  return out;
}

CritPoint at(const Rat& pv, const Rat& px) { return {Coord::of(pv), Coord::of(px), Chart::Finite}; }

ErrorCode codeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::PreconditionViolated;
}

}  // namespace

TEST_CASE("finite critical points: univariate component") {
  const auto sys = vfield::buildParametricA(Rat(6), Rat(1), Rat(2));
  const auto pts = findFiniteCritPoints(sys);
  REQUIRE(pts.size() == 4);
  // sorted by x, then v
  CHECK(*pts[0].x.exact == Rat(-1));
  CHECK(*pts[0].v.exact == Rat(0));
  CHECK(*pts[1].v.exact == Rat(2));
  CHECK(*pts[2].v.exact == Rat(-2));
  CHECK(*pts[3].v.exact == Rat(0));
  for (const auto& p : pts) {
    CHECK(sys.P.eval(*p.v.exact, *p.x.exact).isZero());
    CHECK(sys.Q.eval(*p.v.exact, *p.x.exact).isZero());
  }

  const auto irr = findFiniteCritPoints(field(v * v - BiPoly(2), x));
  REQUIRE(irr.size() == 2);
  CHECK_FALSE(irr[0].v.exact);
  CHECK(irr[0].v.value == doctest::Approx(-std::sqrt(2.0)));
  CHECK(irr[1].v.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(irr[0].x.exact == Rat(0));
}

TEST_CASE("finite critical points: generic resultant") {
  const auto pts = findFiniteCritPoints(field(v * v + x * x - BiPoly(5), v - x.scaled(Rat(2))));
  REQUIRE(pts.size() == 2);
  CHECK(*pts[0].v.exact == Rat(-2));
  CHECK(*pts[0].x.exact == Rat(-1));
  CHECK(*pts[1].v.exact == Rat(2));
  CHECK(*pts[1].x.exact == Rat(1));

  // x^4 - 4x^2 + 1 = 0: four irrational intersections
  const auto sys = field(v * v + x * x - BiPoly(4), v * x - BiPoly(1));
  const auto irr = findFiniteCritPoints(sys);
  REQUIRE(irr.size() == 4);
  for (const auto& p : irr) {
    CHECK_FALSE(p.exact());
    CHECK(std::abs(sys.P.eval(p.v.value, p.x.value)) < 1e-12);
    CHECK(std::abs(sys.Q.eval(p.v.value, p.x.value)) < 1e-12);
  }
  CHECK(findFiniteCritPoints(field(v * v + BiPoly(1), x)).empty());
  CHECK(findFiniteCritPoints(field(BiPoly(1), x)).empty());
}

TEST_CASE("non-isolated critical sets are rejected") {
  CHECK(codeOf([] { findFiniteCritPoints(field(v * x, x)); }) == ErrorCode::NonIsolatedCritSet);
  CHECK(codeOf([] { findFiniteCritPoints(field((v - x) * (v + BiPoly(1)), v - x)); }) ==
        ErrorCode::NonIsolatedCritSet);
  CHECK(codeOf([] { findFiniteCritPoints(field((x - BiPoly(1)) * (v + x), (x - BiPoly(1)) * (v - x * x))); }) ==
        ErrorCode::NonIsolatedCritSet);
  CHECK(codeOf([] { findFiniteCritPoints(field(BiPoly(), x)); }) == ErrorCode::NonIsolatedCritSet);
}

TEST_CASE("exact linear rules agree with numerically computed eigenvalues") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    std::array<std::array<Rat, 2>, 2> J{{{Rat(d(rng), 2), Rat(d(rng))}, {Rat(d(rng)), Rat(d(rng), 3)}}};
    Eigen::Matrix2d M;
    M << J[0][0].toDouble(), J[0][1].toDouble(), J[1][0].toDouble(), J[1][1].toDouble();
    const Eigen::Vector2cd ev = M.eigenvalues();
    if ((J[0][0] * J[1][1] - J[0][1] * J[1][0]).isZero()) {
      CHECK(codeOf([&] { classifyLinearExact(J); }) == ErrorCode::NotApplicable);
      continue;
    }
    const Kind exact = classifyLinearExact(J).kind;
    CHECK(exact == classifyHyperbolic(ev[0], ev[1]).kind);
    // swapping eigenvalues and positive scaling do not matter
    CHECK(exact == classifyHyperbolic(ev[1], ev[0]).kind);
    CHECK(exact == classifyHyperbolic(3.0 * ev[0], 3.0 * ev[1]).kind);
    // reversing time swaps stability
    CHECK(reversed(classifyLinearExact(J)).kind == classifyHyperbolic(-ev[0], -ev[1]).kind);
    ++checked;
  }
  CHECK(checked > 300);
  CHECK(classifyHyperbolic({0, 1}, {0, -1}).kind == Kind::CenterOrWeakFocus);
  CHECK(classifyHyperbolic({-1, 2}, {-1, -2}).kind == Kind::FocusStable);
  CHECK(codeOf([] { classifyHyperbolic(0.0, 1.0); }) == ErrorCode::NotApplicable);
}

TEST_CASE("family A grid: two saddles and two nodes") {
  for (int a : {-1, 1, 2})
    for (int lam : {2, 6})
      for (int mu : {-1, 1}) {
        const auto reps = classifyFinite(vfield::buildParametricA(Rat(lam), Rat(mu), Rat(a)));
        REQUIRE(reps.size() == 4);
        const auto k = kindCount(reps);
        CHECK(k.at(Kind::Saddle) == 2);
        CHECK(k.at(Kind::NodeStable) == 1);
        CHECK(k.at(Kind::NodeUnstable) == 1);
        for (const auto& r : reps) CHECK(std::get<EigenEvidence>(r.cls.evidence).exactSigns);
      }
}

TEST_CASE("family A with a = 0: two saddle-nodes") {
  for (int lam : {2, 6})
    for (int mu : {-1, 1}) {
      const auto sys = vfield::buildParametricA(Rat(lam), Rat(mu), Rat(0));
      const auto reps = classifyFinite(sys);
      REQUIRE(reps.size() == 2);
      for (const auto& r : reps) {
        CHECK(r.cls.kind == Kind::SaddleNode);
        const auto& e = std::get<SemiEvidence>(r.cls.evidence);
        CHECK(e.m == 2);
        CHECK(e.am == Rat(mu));
        // evidence does not change with a longer series
        const auto ls = normalizeAtPoint(sys, r.point);
        const auto longer = classifySemiHyperbolic(ls.sys, e.lambda, e.order + 4);
        CHECK(std::get<SemiEvidence>(longer.evidence).m == e.m);
        CHECK(std::get<SemiEvidence>(longer.evidence).am == e.am);
      }
    }
}

TEST_CASE("sheared local form at (0, 1)") {
  for (const auto& [lam, mu] : std::vector<std::pair<Rat, Rat>>{{Rat(2), Rat(1)}, {Rat(6), Rat(-1)}, {Rat(3), Rat(2)}}) {
    const auto sys = vfield::buildParametricA(lam, mu, Rat(0));
    const auto ls = normalizeAtPoint(sys, at(Rat(0), Rat(1)));
    CHECK(ls.type == LinearType::SemiHyperbolic);
    const BiPoly expect = (v * v).scaled(mu) + (v * x).scaled(Rat(2) * lam) + (x * x).scaled(lam * lam / mu);
    CHECK(ls.sys.P == expect);
    CHECK(ls.sys.Q == x.scaled(Rat(-2)) - x * x);
    CHECK(ls.transform.M[0][1] == lam / mu);
  }
  CHECK(codeOf([] { normalizeAtPoint(vfield::buildParametricA(Rat(2), Rat(1), Rat(0)), at(Rat(1), Rat(1))); }) ==
        ErrorCode::NotACriticalPoint);
}

TEST_CASE("family B grid: a saddle and an unstable node") {
  for (int a : {-2, -1, 1, 3})
    for (int lam : {1, 4})
      for (int mu : {-1, 2})
        for (int b : {0, 1}) {
          const auto reps = classifyFinite(vfield::buildParametricB(Rat(lam), Rat(mu), Rat(a), Rat(b)));
          REQUIRE(reps.size() == 2);
          const auto k = kindCount(reps);
          CHECK(k.at(Kind::Saddle) == 1);
          CHECK(k.at(Kind::NodeUnstable) == 1);
        }
  const auto zero = classifyFinite(vfield::buildParametricB(Rat(2), Rat(1), Rat(0), Rat(1)));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].cls.kind == Kind::SaddleNode);
  CHECK(*zero[0].point.v.exact == Rat(0));
}

TEST_CASE("semi-hyperbolic rules") {
  const auto kindAt0 = [](const BiPoly& P, const BiPoly& Q) { return classifyPoint(field(P, Q), at(Rat(0), Rat(0))); };
  CHECK(kindAt0(v * v, -x).kind == Kind::SaddleNode);
  const auto node = kindAt0(v * v * v, x);
  CHECK(node.kind == Kind::TopologicalNode);
  CHECK(node.stability == Stability::Unstable);
  CHECK(kindAt0(-(v * v * v), x).kind == Kind::TopologicalSaddle);
  const auto stable = kindAt0(-(v * v * v), -x);
  CHECK(stable.kind == Kind::TopologicalNode);
  CHECK(stable.stability == Stability::Stable);
  // the center manifold is curved: x = v^2 + ..., so v' = v x gives v^3 on it
  const auto curved = kindAt0(v * x, -x + v * v);
  CHECK(curved.kind == Kind::TopologicalSaddle);
  CHECK(std::get<SemiEvidence>(curved.evidence).m == 3);
  // kernel not along an axis
  const auto tilted = kindAt0(v + x + v * v, v + x);
  CHECK(tilted.kind == Kind::SaddleNode);
  // g vanishes identically: line of equilibria is excluded upstream, but the
  // series procedure on its own reports the failure
  CHECK(codeOf([] { classifySemiHyperbolic(field(v * x, x), Rat(1), 12); }) == ErrorCode::SeriesInconclusive);
}

TEST_CASE("nilpotent rules") {
  const auto kindAt0 = [](const BiPoly& P, const BiPoly& Q) { return classifyPoint(field(P, Q), at(Rat(0), Rat(0))); };
  CHECK(kindAt0(x, v.pow(3)).kind == Kind::TopologicalSaddle);
  CHECK(kindAt0(x, v * v).kind == Kind::Cusp);
  CHECK(kindAt0(x, -v.pow(3)).kind == Kind::CenterOrWeakFocus);
  CHECK(kindAt0(x, -v.pow(3) + (v * x).scaled(Rat(4))).kind == Kind::EllipticHyperbolicSector);
  CHECK(kindAt0(x, -v.pow(3) + v * x).kind == Kind::CenterOrWeakFocus);
  const auto nn = kindAt0(x, -v.pow(5) + (v * v * x).scaled(Rat(4)));
  CHECK(nn.kind == Kind::NilpotentNode);
  CHECK(nn.stability == Stability::Unstable);
  CHECK(kindAt0(x, -v.pow(7) - v * v * x).stability == Stability::Stable);
  CHECK(kindAt0(x, v.pow(4) + v * x).kind == Kind::SaddleNode);
  CHECK(kindAt0(x, v.pow(2) + v.pow(2) * x).kind == Kind::Cusp);

  const auto ev = std::get<NilpotentEvidence>(kindAt0(x, -v.pow(3) + (v * x).scaled(Rat(4))).evidence);
  CHECK(ev.m == 3);
  CHECK(ev.a == Rat(-1));
  CHECK(ev.n == 1);
  CHECK(ev.b == Rat(4));

  // linear part [[1, 1], [-1, -1]] is nilpotent but not in normal form
  const auto ls = normalizeAtPoint(field(v + x, -v - x + v * v), at(Rat(0), Rat(0)));
  CHECK(ls.type == LinearType::Nilpotent);
  CHECK(ls.sys.P.coeff(0, 1) == Rat(1));
  CHECK(ls.sys.P.coeff(1, 0).isZero());
  CHECK(ls.sys.Q.coeff(1, 0).isZero());
  CHECK(ls.sys.Q.coeff(0, 1).isZero());
  CHECK(classifyNilpotent(ls.sys, 12).kind == Kind::Cusp);

  NilpotentEvidence none;
  none.order = 12;
  CHECK(codeOf([&] { kindFromNilpotent(none); }) == ErrorCode::RuleUndecided);
  none.n = 1;
  none.b = Rat(1);
  CHECK(codeOf([&] { kindFromNilpotent(none); }) == ErrorCode::SeriesInconclusive);
}

TEST_CASE("degenerate and irrational points") {
  const auto zero = classifyPoint(field(v * v, x * x), at(Rat(0), Rat(0)));
  CHECK(zero.kind == Kind::Degenerate);
  CHECK_FALSE(zero.note.empty());

  const auto reps = classifyFinite(field(v * v - BiPoly(2), x));
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].cls.kind == Kind::Saddle);
  CHECK(reps[1].cls.kind == Kind::NodeUnstable);
  CHECK_FALSE(std::get<EigenEvidence>(reps[0].cls.evidence).exactSigns);
}
