#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "opf/rat.hpp"
#include "opf/unipoly.hpp"

namespace opf {

/// A distinct real root: exact when rational, otherwise a double refined from an
/// exact isolating interval [lo, hi].
struct RealRoot {
  double value = 0.0;
  std::optional<Rat> exact;
  Rat lo, hi;
};

/// All distinct real roots in increasing order (Sturm isolation over Q, so
/// distinctness and count are exact). Throws IdenticallyZero on the zero polynomial.
std::vector<RealRoot> realRoots(const UniPoly& p);

/// Number of distinct real roots in the half-open interval (a, b].
int countRoots(const UniPoly& p, const Rat& a, const Rat& b);

/// Simplest rational (smallest denominator) in the closed interval [a, b].
Rat simplestBetween(Rat a, Rat b);

/// Roots of a polynomial with double coefficients (index = power), via the
/// companion matrix. Leading zeros are dropped.
std::vector<std::complex<double>> floatRoots(std::vector<double> coeffs);

}  // namespace opf
