#include <random>

#include "doctest.h"
#include "opf/bipoly.hpp"
#include "opf/error.hpp"
#include "opf/roots.hpp"
#include "opf/series.hpp"
#include "opf/unipoly.hpp"

using namespace opf;

namespace {

const BiPoly v = BiPoly::v();
const BiPoly x = BiPoly::x();

BiPoly randomPoly(std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> count(0, 8);
  std::uniform_int_distribution<int> pw(0, maxDeg);
  BiPoly p;
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    const int i = pw(rng);
    const int j = std::uniform_int_distribution<int>(0, maxDeg - i)(rng);
    p += BiPoly::term(Rat(coef(rng)), i, j);
  }
  return p;
}

// Dense schoolbook product, kept separate from BiPoly's sparse kernel.
BiPoly denseProduct(const BiPoly& a, const BiPoly& b) {
  constexpr int N = 16;
  std::vector<std::vector<Rat>> A(N, std::vector<Rat>(N)), B = A, C(2 * N, std::vector<Rat>(2 * N));
  for (const auto& [m, c] : a.terms()) A[m.v][m.x] = c;
  for (const auto& [m, c] : b.terms()) B[m.v][m.x] = c;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) C[i + k][j + l] += A[i][j] * B[k][l];
  BiPoly r;
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) r += BiPoly::term(C[i][j], i, j);
  return r;
}

}  // namespace

TEST_CASE("Rat stays canonical") {
  const Rat r(6, -4);
  CHECK(r.toString() == "-3/2");
  CHECK(r.den() == 2);
  CHECK((Rat(1, 3) + Rat(1, 6)).toString() == "1/2");
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("-7/21") == Rat(-1, 3));
  CHECK(Rat::parse("1.5e-2") == Rat(3, 200));
  CHECK(Rat(9, 4).sqrtExact() == Rat(3, 2));
  CHECK_FALSE(Rat(2).sqrtExact());
  CHECK_THROWS_AS(Rat::parse("1/0"), Error);
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}

TEST_CASE("BiPoly ring operations") {
  CHECK((v + x) * (v - x) == v * v - x * x);
  CHECK(((v + x) * BiPoly()).isZero());

  const Rat mu(1);
  const BiPoly lhs = (BiPoly::term(Rat(2) * mu, 1, 1) + BiPoly(2)) * (v + x.scaled(Rat(2)));
  const BiPoly expanded = denseProduct(BiPoly::term(Rat(2) * mu, 1, 1) + BiPoly(2), v + x.scaled(Rat(2)));
  CHECK(lhs == expanded);
  CHECK(lhs == parseBiPoly("2v^2x + 4vx^2 + 2v + 4x"));
}

TEST_CASE("diff and eval") {
  CHECK((v * v * x).diff(Var::V) == BiPoly::term(Rat(2), 1, 1));
  CHECK((BiPoly(1) - x * x).diff(Var::X) == BiPoly::term(Rat(-2), 0, 1));
  CHECK(BiPoly(Rat(7, 3)).diff(Var::X).isZero());

  CHECK((v * v + x).eval(Rat(2), Rat(3)) == Rat(7));
  CHECK((BiPoly(1) - x * x).eval(Rat(5), Rat(1)) == Rat(0));

  // T_3(1/2) by the recurrence T_{k+1} = 2 t T_k - T_{k-1}
  Rat t0(1), t1(1, 2);
  for (int k = 1; k < 3; ++k) {
    const Rat t2 = Rat(2) * Rat(1, 2) * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  const BiPoly t3 = BiPoly::term(Rat(4), 0, 3) - BiPoly::term(Rat(3), 0, 1);
  CHECK(t3.eval(Rat(0), Rat(1, 2)) == t1);
  CHECK(t1 == Rat(-1));
  CHECK(t3.eval(0.0, 0.5) == doctest::Approx(-1.0));
}

TEST_CASE("printing round-trips through the parser") {
  const BiPoly p = v * v + BiPoly::term(Rat(2), 1, 1) + BiPoly::term(Rat(-1, 3), 0, 1) + BiPoly(4);
  CHECK(p.toString() == "v^2+2vx-(1/3)x+4");
  CHECK(parseBiPoly(p.toString()) == p);
  CHECK((v + x.scaled(Rat(2))).toString() == "v+2x");
  CHECK(parseBiPoly("(1-x^2)*3/2 - x*v") == (BiPoly(1) - x * x).scaled(Rat(3, 2)) - v * x);
  CHECK(parseBiPoly("-z^2+vz", {"v", "z"}) == v * x - x * x);
  CHECK_THROWS_AS(parseBiPoly("v + y"), Error);
  CHECK_THROWS_AS(parseBiPoly("v / x"), Error);
}

TEST_CASE("lex division by a single divisor") {
  const BiPoly f = BiPoly::term(Rat(2), 1, 1) + BiPoly(2);
  const BiPoly k = v + x.scaled(Rat(2));
  auto [q, r] = divide(k * f, f);
  CHECK(r.isZero());
  CHECK(q == k);

  auto [q2, r2] = divide(k * f + BiPoly(1), f);
  CHECK(r2 == BiPoly(1));

  // divisor nonlinear in v
  const BiPoly g = v * v * x + v + BiPoly(3);
  auto [q3, r3] = divide(g * (x - v), g);
  CHECK(r3.isZero());
  CHECK(q3 == x - v);
}

TEST_CASE("ring axioms and evaluation homomorphism on random polynomials") {
  std::mt19937 rng(20261019);
  std::uniform_int_distribution<int> small(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const BiPoly p = randomPoly(rng, 6), q = randomPoly(rng, 6), r = randomPoly(rng, 6);
    CHECK((p + q) * r == p * r + q * r);
    CHECK((p * q).diff(Var::V) == p.diff(Var::V) * q + p * q.diff(Var::V));
    CHECK((p * q).diff(Var::X) == p.diff(Var::X) * q + p * q.diff(Var::X));
    const Rat a(small(rng), 1 + std::abs(small(rng)));
    const Rat b(small(rng), 1 + std::abs(small(rng)));
    CHECK((p * q).eval(a, b) == p.eval(a, b) * q.eval(a, b));
    if (!q.isZero()) {
      auto [quo, rem] = divide(p * q, q);
      CHECK(rem.isZero());
      CHECK(quo == p);
    }
  }
}

TEST_CASE("UniPoly division, gcd and degree sentinel") {
  const UniPoly a{Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
  const UniPoly b{Rat(1), Rat(1)};           // x + 1
  auto [q, r] = divmod(a, b);
  CHECK(q == UniPoly{Rat(-1), Rat(1)});
  CHECK(r.isZero());
  CHECK(gcd(a, UniPoly{Rat(2), Rat(2)}) == b);
  CHECK_FALSE(UniPoly().degree().has_value());
  CHECK(UniPoly{Rat(0), Rat(0)}.isZero());
  CHECK(a.toString() == "x^2-1");
}

TEST_CASE("real root isolation") {
  // (x - 1/3)(x + 2)(x^2 - 2)
  const UniPoly p = UniPoly{Rat(-1, 3), Rat(1)} * UniPoly{Rat(2), Rat(1)} * UniPoly{Rat(-2), Rat(0), Rat(1)};
  const auto roots = realRoots(p);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].exact == Rat(-2));
  CHECK(roots[1].value == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(roots[1].exact);
  CHECK(roots[2].exact == Rat(1, 3));
  CHECK(roots[3].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(realRoots(UniPoly{Rat(1), Rat(0), Rat(1)}).empty());
  CHECK(realRoots(UniPoly{Rat(1), Rat(-2), Rat(1)}).size() == 1);  // double root counted once
  CHECK_THROWS_AS(realRoots(UniPoly()), Error);
  CHECK(simplestBetween(Rat(3, 10), Rat(4, 10)) == Rat(1, 3));
}

TEST_CASE("composeSeries") {
  const Rat mu(3);
  PowerSeries f(12);
  f[2] = Rat(-1, 2);
  // A = mu v^2 does not see the inner series
  auto g = composeSeries(BiPoly::term(mu, 2, 0), f, Var::X);
  CHECK(leadingTerm(g).power == 2);
  CHECK(leadingTerm(g).coeff == mu);

  CHECK(composeSeries(x, PowerSeries(12), Var::X).isZero());
  CHECK_THROWS_AS(leadingTerm(composeSeries(x, PowerSeries(12), Var::X)), Error);

  // B(v, z) = -z^2 with z = c v^2 gives -c^2 v^4
  const Rat lambda(6), a(-1);
  PowerSeries z(12);
  z[2] = Rat(1) - lambda - a;
  auto F = composeSeries(BiPoly::term(Rat(-1), 0, 2), z, Var::X);
  CHECK(leadingTerm(F).power == 4);
  CHECK(leadingTerm(F).coeff == -(Rat(1) - lambda - a).pow(2));

  // substituting into the first slot
  PowerSeries s(6);
  s[1] = Rat(2);
  auto h = composeSeries(v * x, s, Var::V);  // (2t) * t
  CHECK(h[2] == Rat(2));
}

TEST_CASE("solveImplicitSeries") {
  const int N = 12;
  // -2 z - z^2 = 0 has only the trivial branch through the origin
  CHECK(solveImplicitSeries(Rat(-2), BiPoly::term(Rat(-1), 0, 2), N).isZero());
  CHECK(solveImplicitSeries(Rat(1), BiPoly(), N).isZero());
  CHECK(solveImplicitSeries(Rat(1), v * x, N).isZero());

  // y + y^2 - t^2 = 0  =>  y = sum (-1)^k Catalan(k) t^(2k+2)
  const auto y = solveImplicitSeries(Rat(1), x * x - v * v, N);
  const long catalan[] = {1, 1, 2, 5, 14, 42};
  for (int k = 0; 2 * k + 2 <= N; ++k) CHECK(y[2 * k + 2] == Rat((k % 2 ? -1 : 1) * catalan[k]));
  for (int k = 1; k <= N; k += 2) CHECK(y[k].isZero());

  CHECK_THROWS_AS(solveImplicitSeries(Rat(0), x * x, N), Error);
  CHECK_THROWS_AS(solveImplicitSeries(Rat(1), v, N), Error);
}

TEST_CASE("solveImplicitSeries is self-consistent on random jets") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const BiPoly B = randomPoly(rng, 4).nonlinearPart();
    const Rat lin(1 + trial % 5, trial % 2 ? 1 : -3);
    const auto f = solveImplicitSeries(lin, B, 10);
    const auto residual = f.scaled(lin) + composeSeries(B, f, Var::X);
    CHECK(residual.isZero());
  }
}
