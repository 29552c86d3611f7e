#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "opf/rat.hpp"
#include "opf/unipoly.hpp"

namespace opf {

/// The two phase variables. Slot V is the first coordinate (v in the family
/// systems), slot X the second.
enum class Var { V, X };

struct Monomial {
  int v = 0;
  int x = 0;
  int total() const { return v + x; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

using VarNames = std::array<std::string, 2>;
inline const VarNames kDefaultNames{"v", "x"};

/// Sparse bivariate polynomial over Q. Zero coefficients are never stored.
class BiPoly {
 public:
  using Terms = std::map<Monomial, Rat>;

  BiPoly() = default;
  BiPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  BiPoly(int c) : BiPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  explicit BiPoly(Terms terms);

  static BiPoly var(Var which);
  static BiPoly v() { return var(Var::V); }
  static BiPoly x() { return var(Var::X); }
  static BiPoly term(const Rat& c, int vPow, int xPow);
  /// Lifts p(t) to p(v) or p(x).
  static BiPoly fromUni(const UniPoly& p, Var in = Var::X);

  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  Rat coeff(int vPow, int xPow) const;

  /// nullopt for the zero polynomial.
  std::optional<int> totalDegree() const;
  std::optional<int> degreeIn(Var which) const;
  bool isFreeOf(Var which) const;

  /// Coefficient of v^k as a polynomial in x.
  UniPoly coeffInV(int k) const;
  /// Coefficient of x^k as a polynomial in v.
  UniPoly coeffInX(int k) const;
  /// p(t, 0) or p(0, t) as univariate polynomials; throws unless the other variable is absent.
  UniPoly toUni(Var in) const;
  BiPoly homogeneousPart(int degree) const;
  /// Terms of total degree >= 2.
  BiPoly nonlinearPart() const;

  BiPoly diff(Var which) const;
  Rat eval(const Rat& v, const Rat& x) const;
  double eval(double v, double x) const;
  /// p(forV, forX) by exact composition.
  BiPoly substitute(const BiPoly& forV, const BiPoly& forX) const;
  /// Univariate restriction with one variable fixed to a rational value.
  UniPoly restrict(Var fixed, const Rat& value) const;

  BiPoly scaled(const Rat& s) const;
  BiPoly pow(int e) const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) { BiPoly r = a; return r *= b; }
  friend BiPoly operator-(const BiPoly& a) { return a.scaled(Rat(-1)); }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  /// Compact syntax, e.g. "v^2+2vx-(1/3)x+4"; accepted back by parseBiPoly.
  std::string toString(const VarNames& names = kDefaultNames) const;

 private:
  void add(const Monomial& m, const Rat& c);
  Terms terms_;
};

/// Lex (v > x) division by a single divisor: a = q*f + r with no term of r
/// divisible by the leading term of f. For one divisor r = 0 iff f divides a.
struct DivisionResult {
  BiPoly quotient;
  BiPoly remainder;
};
DivisionResult divide(const BiPoly& a, const BiPoly& f);

/// Parses the syntax produced by BiPoly::toString (and ordinary infix input with
/// + - * / ^ and parentheses). Single-letter identifiers are matched against names.
BiPoly parseBiPoly(std::string_view text, const VarNames& names = kDefaultNames);

}  // namespace opf
