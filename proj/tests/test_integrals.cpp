#include <cmath>
#include <random>

#include "doctest.h"
#include "opf/error.hpp"
#include "opf/integrals.hpp"
#include "opf/ode.hpp"

using namespace opf;
using namespace opf::integrals;
using families::FamilyId;

namespace {

const UniPoly X = UniPoly::x();
const UniPoly rho{Rat(1), Rat(0), Rat(-1)};

ErrorCode codeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::PreconditionViolated;
}

double tOf(int n, double x) { return std::cos(n * std::acos(x)); }

}  // namespace

TEST_CASE("Riccati and linear forms") {
  for (int n : {1, 2, 5}) {
    const auto cheb = riccatiToLinear(riccatiOf(families::makeFamily(FamilyId::ChebyshevT), n, Rat(3)));
    CHECK(cheb.rho == rho);
    CHECK(cheb.tau == -X);
    CHECK(cheb.lambda == Rat(n * n));
    const auto herm = riccatiToLinear(riccatiOf(families::makeFamily(FamilyId::Hermite), n, Rat(-1, 2)));
    CHECK(herm.rho == UniPoly::constant(Rat(1)));
    CHECK(herm.tau == X.scaled(Rat(-2)));
    CHECK(herm.lambda == Rat(2 * n));
  }
  const auto r = riccatiOf(families::makeFamily(FamilyId::ChebyshevT), 3, Rat(2));
  CHECK(r.c0 == RatFunc::of(UniPoly::constant(Rat(9, 2))));
  CHECK(r.c2 == RatFunc(UniPoly::constant(Rat(2)), rho));

  for (const auto& f : families::registry({Rat(1, 2), Rat(3, 2)}))
    for (int n = 1; n <= 5; ++n)
      for (const Rat& mu : {Rat(1), Rat(-2), Rat(1, 3)}) {
        const auto fwd = riccatiOf(f, n, mu);
        const auto lin = riccatiToLinear(fwd);
        const auto back = linearToRiccati(lin, mu);
        CHECK(back.c0 == fwd.c0);
        CHECK(back.c1 == fwd.c1);
        CHECK(back.c2 == fwd.c2);
      }
  CHECK(codeOf([] { riccatiToLinear({RatFunc::of(UniPoly::constant(Rat(1))), RatFunc(), RatFunc()}); }) ==
        ErrorCode::DegenerateC2);
  CHECK(codeOf([] {
          riccatiToLinear({RatFunc::of(X), RatFunc(), RatFunc::of(UniPoly::constant(Rat(1)))});
        }) == ErrorCode::NotHypergeometric);
  CHECK(codeOf([] { linearToRiccati({rho, -X, Rat(1)}, Rat(0)); }) == ErrorCode::ZeroMu);
}

TEST_CASE("reduced equation") {
  for (int n = 1; n <= 6; ++n) {
    const Rat lam(n * n);
    const auto red = reducedEquation(n);
    CHECK(red.numerator.coeff(0) == Rat(-2) - Rat(4) * lam);
    CHECK(red.numerator.coeff(2) == Rat(4) * lam - Rat(1));
    // the printed form (-2 - x^2 - 4 lambda (1 - x^2)) / (4 (1 - x^2)^2)
    const UniPoly printed = UniPoly::constant(Rat(-2)) - X * X - rho.scaled(Rat(4) * lam);
    CHECK(red.q() == RatFunc(printed, (rho * rho).scaled(Rat(4))));
    // independent derivation: q = b1^2/4 + b1'/2 - b0 for y'' + b1 y' + b0 y = 0
    const RatFunc b1(-X, rho), b0(UniPoly::constant(lam), rho);
    const RatFunc quarter = RatFunc::of(UniPoly::constant(Rat(1, 4))), half = RatFunc::of(UniPoly::constant(Rat(1, 2)));
    CHECK(red.q() == b1 * b1 * quarter + b1.derivative() * half - b0);
    for (double x : {0.1, 0.7, 2.5}) CHECK(red.q().eval(x) == doctest::Approx(red.q().eval(-x)));
  }
  const auto one = reducedEquation(1);
  CHECK(one.q() == RatFunc(UniPoly{Rat(-6), Rat(0), Rat(3)}, (rho * rho).scaled(Rat(4))));
}

TEST_CASE("Chebyshev solution pair") {
  std::vector<double> pts;
  for (double x = -0.95; x < 0.96; x += 0.05) pts.push_back(x);
  for (int n = 1; n <= 12; ++n) {
    const auto r = chebyshevSolutionsResidual(n, pts);
    CHECK(r.residualT.isZero());
    CHECK(r.maxResidualT == 0.0);
    CHECK(r.maxResidualU < 1e-9 * n * n * n);
  }
  CHECK(chebyshevSolutionsResidual(1, {0.3}).maxResidualU < 1e-12);
  CHECK(chebyshevSolutionsResidual(3, {1.5, -2.0}).maxResidualU < 1e-9);
  CHECK(codeOf([] { chebyshevSolutionsResidual(2, {0.5, 1.0}); }) == ErrorCode::SingularSamplePoint);
}

TEST_CASE("first integral expressions") {
  // n = 1, mu = 1: (v - x) sqrt(1 - x^2) / ((1 - x^2) + v x)
  const auto I = firstIntegralV(1, Rat(1));
  for (double v : {-0.4, 0.3, 2.0})
    for (double x : {-0.5, 0.2, 0.9}) {
      const double want = (v - x) * std::sqrt(1 - x * x) / ((1 - x * x) + v * x);
      CHECK(I.eval(v, x).real() == doctest::Approx(want).epsilon(1e-13));
    }
  CHECK(std::abs(I.eval(0.25, 0.25)) == 0.0);
  CHECK_FALSE(I.toString().empty());

  // w1 = T'/T - x/(2(1-x^2)) is the pole locus of the w-form; for n = 2 at x = 0, w1 = 0
  CHECK(codeOf([] { firstIntegralW(2).eval(0.0, 0.0); }) == ErrorCode::PoleAtPoint);
  CHECK(codeOf([] { firstIntegralV(2, Rat(0)); }) == ErrorCode::ZeroMu);
}

TEST_CASE("bridge between the w and v forms") {
  const auto b = bridgeWV(Rat(-3));
  CHECK(b.toW(0.5, 0.0) == doctest::Approx(1.5));
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> vs(-3, 3), xs(-0.98, 0.98), outer(1.05, 3);
  for (int k = 0; k < 100; ++k) {
    const double v = vs(rng), x = k % 2 ? xs(rng) : outer(rng);
    CHECK(b.toV(b.toW(v, x), x) == doctest::Approx(v).epsilon(1e-12));
  }
  CHECK(codeOf([&] { b.toW(0.0, 1.0); }) == ErrorCode::SingularAtPMOne);
  CHECK(codeOf([] { bridgeWV(Rat(0)); }) == ErrorCode::ZeroMu);

  for (int n = 1; n <= 4; ++n)
    for (const Rat& mu : {Rat(1), Rat(-1), Rat(5, 2)}) {
      const auto Iv = firstIntegralV(n, mu), Iw = firstIntegralW(n);
      const auto br = bridgeWV(mu);
      int checked = 0;
      for (int k = 0; k < 200; ++k) {
        const double v = vs(rng), x = k % 4 ? xs(rng) : outer(rng);
        try {
          const auto a = Iv.eval(v, x), c = Iw.eval(br.toW(v, x), x);
          CHECK(std::abs(a - c) <= 1e-9 * std::max(1.0, std::abs(a)));
          ++checked;
        } catch (const Error&) {
        }
      }
      CHECK(checked > 190);
    }
}

TEST_CASE("bridge pulls the w foliation back to the v foliation") {
  // 4 rho^2 dw/dx along dv/dx = F/rho must equal num_q - (2 rho w)^2 with 2 rho w = N
  const BiPoly v = BiPoly::v(), x = BiPoly::x();
  const BiPoly r = BiPoly::fromUni(rho), dr = BiPoly::fromUni(rho.derivative());
  for (int n = 1; n <= 4; ++n)
    for (const Rat& mu : {Rat(1), Rat(-2)}) {
      const Rat lam(n * n);
      const BiPoly F = r.scaled(lam / mu) - x * v + (v * v).scaled(mu);
      const BiPoly N = -(x + v.scaled(Rat(2) * mu));
      const BiPoly lhs = BiPoly(2) * r * N.diff(Var::X) + BiPoly(2) * N.diff(Var::V) * F - BiPoly(2) * dr * N;
      const BiPoly rhs = BiPoly::fromUni(reducedEquation(n).numerator) - N * N;
      CHECK(lhs == rhs);
      // and the v foliation is the one of the Chebyshev system
      const auto sys = chebyshevSystem(n, mu);
      CHECK(sys.P == F);
      CHECK(sys.Q == r);
    }
}

TEST_CASE("first integrals are constant along the flow") {
  const std::vector<std::array<double, 2>> starts{{0.2, 0.5}, {-0.3, 0.1}, {0.4, -0.6}};
  const auto one = checkFirstIntegralFlow(firstIntegralV(2, Rat(1)), chebyshevSystem(2, Rat(1)), {{0.2, 0.5}}, 0.5, 1e-6);
  CHECK(one.pass);
  CHECK(one.maxDrift < 1e-6);

  for (int n = 1; n <= 3; ++n)
    for (int mu : {-1, 1}) {
      const auto rep = checkFirstIntegralFlow(firstIntegralV(n, Rat(mu)), chebyshevSystem(n, Rat(mu)), starts, 0.5, 1e-6);
      CHECK(rep.pass);
      REQUIRE(rep.drifts.size() == 3);

      std::vector<std::array<double, 2>> wStarts;
      const auto br = bridgeWV(Rat(mu));
      for (const auto& s : starts) wStarts.push_back({br.toW(s[0], s[1]), s[1]});
      CHECK(checkFirstIntegralFlow(firstIntegralW(n), reducedSystem(n), wStarts, 0.05, 1e-6).pass);
    }

  // on the invariant curve mu v T + (1 - x^2) T' = 0 the denominator vanishes
  const double x0 = -0.5, v0 = -(1 - x0 * x0) * 4 * x0 / (2 * x0 * x0 - 1);
  CHECK(tOf(2, x0) == doctest::Approx(2 * x0 * x0 - 1));
  const auto onCurve = checkFirstIntegralFlow(firstIntegralV(2, Rat(1)), chebyshevSystem(2, Rat(1)), {{v0, x0}}, 0.5, 1e-6);
  CHECK(onCurve.reciprocal[0]);
  CHECK(onCurve.pass);

  // a start that blows up before T
  CHECK(codeOf([&] {
          checkFirstIntegralFlow(firstIntegralV(1, Rat(1)), chebyshevSystem(1, Rat(1)), {{50.0, 0.0}}, 1.0, 1e-6);
        }) == ErrorCode::TrajectoryLeftDomain);
}

TEST_CASE("time rescaling keeps the first integral") {
  auto sys = chebyshevSystem(2, Rat(1));
  auto fast = sys;
  fast.P = sys.P.scaled(Rat(2));
  fast.Q = sys.Q.scaled(Rat(2));
  const auto I = firstIntegralV(2, Rat(1));
  const auto a = ode::integrate(ode::CompiledField(sys), 0.2, 0.5, 0.5);
  const auto b = ode::integrate(ode::CompiledField(fast), 0.2, 0.5, 0.25);
  CHECK(b.samples.back().v == doctest::Approx(a.samples.back().v).epsilon(1e-8));
  CHECK(std::abs(I.eval(a.samples.back().v, a.samples.back().x)) ==
        doctest::Approx(std::abs(I.eval(b.samples.back().v, b.samples.back().x))).epsilon(1e-8));
  CHECK(checkFirstIntegralFlow(I, fast, {{0.2, 0.5}}, 0.25, 1e-6).pass);
}
