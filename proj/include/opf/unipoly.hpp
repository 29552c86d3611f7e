#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opf/rat.hpp"

namespace opf {

/// Dense univariate polynomial over Q. Coefficient i multiplies x^i; trailing
/// zeros are never stored, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::initializer_list<Rat> coeffs);
  explicit UniPoly(std::vector<Rat> coeffs);

  static UniPoly constant(const Rat& c);
  static UniPoly monomial(const Rat& c, int power);
  static UniPoly x() { return monomial(Rat(1), 1); }

  /// nullopt for the zero polynomial (degree minus infinity).
  std::optional<int> degree() const;
  bool isZero() const { return c_.empty(); }
  bool isConstant() const { return c_.size() <= 1; }

  /// Coefficient of x^i, zero past the stored range.
  Rat coeff(int i) const;
  Rat leading() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  double eval(double x) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly scaled(const Rat& s) const;
  /// p(-x)
  UniPoly reflected() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(const Rat& s, const UniPoly& p) { return p.scaled(s); }
  friend UniPoly operator-(const UniPoly& p) { return p.scaled(Rat(-1)); }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string toString(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

namespace detail {
/// Appends "c*m" in the compact term syntax shared by all polynomial printers:
/// integer coefficients are juxtaposed ("2vx"), fractions are parenthesised ("(1/3)x").
void appendTerm(std::string& out, const Rat& c, const std::string& monomial);
}  // namespace detail

/// Euclidean division over Q; throws on a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero only when both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);
/// Squarefree part p / gcd(p, p').
UniPoly squarefree(const UniPoly& p);

/// Polynomial fraction num/den with common factors removed and a monic denominator.
struct RatFunc {
  UniPoly num;
  UniPoly den = UniPoly::constant(Rat(1));

  RatFunc() = default;
  RatFunc(UniPoly n, UniPoly d);
  static RatFunc of(const UniPoly& p) { return RatFunc(p, UniPoly::constant(Rat(1))); }

  bool isZero() const { return num.isZero(); }
  bool isPolynomial() const { return den.isConstant(); }
  double eval(double x) const;
  RatFunc derivative() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }

  std::string toString(const std::string& var = "x") const;
};

}  // namespace opf
