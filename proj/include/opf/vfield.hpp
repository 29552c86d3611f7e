#pragma once

#include <array>
#include <optional>
#include <string>

#include "opf/bipoly.hpp"
#include "opf/families.hpp"
#include "opf/rat.hpp"

namespace opf::vfield {

/// Where a system came from; every field is optional.
struct Provenance {
  std::string source;  // "family", "shape-a", "shape-b", "chart-U1", "user", ...
  std::optional<families::FamilyId> family;
  std::optional<int> n;
  std::optional<Rat> mu, a, b, lambda, alpha, beta;
};

/// Planar polynomial system v' = P(v, x), x' = Q(v, x).
struct QuadSystem {
  BiPoly P;
  BiPoly Q;
  Provenance provenance;
  VarNames names = kDefaultNames;

  /// max(deg P, deg Q); 0 for the zero field.
  int degree() const;
};

/// v' = (lambda_n/mu) rho + (rho' - tau) v + mu v^2, x' = rho.
QuadSystem buildFamilySystem(const families::FamilySpec& spec, int n, const Rat& mu);

/// v' = (lambda/mu)(1 - x^2) + a v x + b v + mu v^2, x' = 1 - x^2. With b = 0
/// this is the one-parameter shape covering Legendre, Chebyshev and Gegenbauer.
QuadSystem buildParametricA(const Rat& lambda, const Rat& mu, const Rat& a, const Rat& b = Rat(0));

/// v' = (lambda/mu) x + a v + b v x + mu v^2, x' = x (Laguerre shape).
QuadSystem buildParametricB(const Rat& lambda, const Rat& mu, const Rat& a, const Rat& b);

/// Foliation dv/dx = numerator/denominator with common polynomial content removed.
struct Foliation {
  BiPoly numerator;
  BiPoly denominator;
};
Foliation foliation(const QuadSystem& sys);

/// X f = P f_v + Q f_x.
BiPoly lieDerivative(const QuadSystem& sys, const BiPoly& f);

struct InvariantCurve {
  BiPoly f;
  BiPoly cofactor;
};

/// f = mu v P_n + rho P_n' with cofactor rho' + mu v - tau; the identity X f = K f
/// is checked exactly before returning.
InvariantCurve invariantCurve(const families::FamilySpec& spec, int n, const Rat& mu);

struct InvarianceCheck {
  std::optional<BiPoly> cofactor;  // present iff X f = K f exactly
  BiPoly remainder;                // of X f divided by f
};
InvarianceCheck verifyInvariant(const QuadSystem& sys, const BiPoly& f);

using Matrix2 = std::array<std::array<double, 2>, 2>;
using SymMatrix2 = std::array<std::array<BiPoly, 2>, 2>;

/// [[P_v, P_x], [Q_v, Q_x]].
SymMatrix2 jacobianSymbolic(const QuadSystem& sys);
Matrix2 jacobian(const QuadSystem& sys, double v, double x);

}  // namespace opf::vfield
