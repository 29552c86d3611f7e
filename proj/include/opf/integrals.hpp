#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opf/families.hpp"
#include "opf/rat.hpp"
#include "opf/unipoly.hpp"
#include "opf/vfield.hpp"

namespace opf::integrals {

/// dv/dx = c0 + c1 v + c2 v^2.
struct RiccatiForm {
  RatFunc c0, c1, c2;
};

/// rho y'' + tau y' + lambda y = 0.
struct LinearForm {
  UniPoly rho, tau;
  Rat lambda;
};

/// c0 = lambda/mu, c1 = (rho' - tau)/rho, c2 = mu/rho. Throws ZeroMu.
RiccatiForm linearToRiccati(const LinearForm& l, const Rat& mu);
RiccatiForm riccatiOf(const families::FamilySpec& spec, int n, const Rat& mu);

/// Inverts linearToRiccati through y'/y = -c2 v. The linear equation is fixed up
/// to a common factor; the representative has lambda > 0 (or a monic rho when
/// lambda = 0). Throws DegenerateC2, NotHypergeometric.
LinearForm riccatiToLinear(const RiccatiForm& r);

/// z'' = q z with q = numerator / denominator.
struct ReducedEquation {
  UniPoly numerator;    // -2 - 4 lambda + (4 lambda - 1) x^2
  UniPoly denominator;  // 4 (1 - x^2)^2
  RatFunc q() const { return RatFunc(numerator, denominator); }
};
ReducedEquation reducedEquation(int n);

/// w' = 4(1-x^2)^2 times the Riccati form of the reduced equation, x' = 4(1-x^2)^2.
vfield::QuadSystem reducedSystem(int n);
/// v' = (n^2/mu)(1-x^2) - x v + mu v^2, x' = 1 - x^2.
vfield::QuadSystem chebyshevSystem(int n, const Rat& mu);

struct SolutionResidual {
  UniPoly residualT;  // (1-x^2) T'' - x T' + n^2 T, exactly
  double maxResidualT = 0;
  double maxResidualU = 0;  // for U_{n-1} sqrt(1-x^2), complex modulus outside [-1, 1]
};
/// Throws SingularSamplePoint at x = +-1.
SolutionResidual chebyshevSolutionsResidual(int n, const std::vector<double>& samplePts);

/// Small expression tree over x, one dependent variable and sqrt(1 - x^2).
class Expr {
 public:
  static Expr constant(const Rat& c);
  static Expr dependent(const std::string& name);
  static Expr poly(const UniPoly& p, const std::string& label);
  static Expr sqrtRho();

  /// Principal branch of the square root; throws PoleAtPoint on a zero divisor.
  std::complex<double> eval(double dep, double x) const;
  std::string toString() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// I = numerator / denominator.
struct FirstIntegralExpr {
  std::string dependent;  // "w" or "v"
  int n = 0;
  std::optional<Rat> mu;
  Expr numerator, denominator;

  std::complex<double> eval(double dep, double x) const;
  std::string toString() const;
};

/// ((-w + U'/U - 3x/(2(1-x^2))) U sqrt(1-x^2)) / ((-w + T'/T - x/(2(1-x^2))) T)
/// with the inner fractions cleared, so zeros of T and U are not poles.
FirstIntegralExpr firstIntegralW(int n);
/// (U'(1-x^2) + U (mu v - x)) sqrt(1-x^2) / (T'(1-x^2) + mu T v). Throws ZeroMu.
FirstIntegralExpr firstIntegralV(int n, const Rat& mu);

/// w = -x/(2(1-x^2)) - mu v/(1-x^2) and back. Throws SingularAtPMOne.
struct Bridge {
  Rat mu;
  double toW(double v, double x) const;
  double toV(double w, double x) const;
};
Bridge bridgeWV(const Rat& mu);

struct FlowCheck {
  std::vector<double> drifts;     // per start
  std::vector<bool> reciprocal;   // per start: checked with 1/I near a pole
  double maxDrift = 0;
  bool pass = false;
};

/// Integrates each start over [0, T] and tracks |I| on the sample grid. A start
/// whose trajectory brings |denominator| below 1e-8 is checked with 1/I instead.
/// Throws TrajectoryLeftDomain when a run stops early.
FlowCheck checkFirstIntegralFlow(const FirstIntegralExpr& expr, const vfield::QuadSystem& sys,
                                 const std::vector<std::array<double, 2>>& starts, double T, double tol,
                                 double integratorTol = 1e-11);

}  // namespace opf::integrals
