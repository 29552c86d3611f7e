#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "opf/bipoly.hpp"
#include "opf/ode.hpp"
#include "opf/rat.hpp"
#include "opf/vfield.hpp"

namespace opf::darboux {

/// Invariant algebraic curve f = 0 with X f = K f.
struct Curve {
  BiPoly f, K;
};

/// Exponential factor exp(g/h) with X(g/h) = L.
struct ExpFactor {
  BiPoly g, h, L;
};

struct Problem {
  vfield::QuadSystem system;
  std::vector<Curve> curves;
  std::vector<ExpFactor> expFactors;
};

/// The multivalued invariant f_1^l_1 ... exp(g_1/h_1)^m_1 ... exp(s t).
struct Certificate {
  std::vector<Curve> curves;
  std::vector<ExpFactor> expFactors;
  std::vector<Rat> lambdas;
  std::vector<Rat> mus;
  Rat s;
  /// Directions along which (lambdas, mus) can move without breaking the relation.
  std::vector<std::vector<Rat>> nullspace;
  VarNames names = kDefaultNames;

  /// e.g. "sqrt(x-1)/sqrt(x+1)*exp(t)".
  std::string describe() const;
};

/// X(g) h - g X(h) == L h^2.
bool expFactorHolds(const vfield::QuadSystem& sys, const ExpFactor& e);

/// Throws InvalidCofactor unless every curve and exponential factor checks out.
void validate(const Problem& p);

/// Solves sum l_i K_i + sum m_j L_j = -s coefficient-wise. Free directions of an
/// underdetermined system are set to zero and listed in Certificate::nullspace.
/// nullopt when the relation is infeasible.
std::optional<Certificate> solveCofactorRelation(const Problem& p, const Rat& s);

/// Principal branch of the invariant at (v, x, t); throws PoleAtPoint when a
/// factor with negative exponent (or a denominator h) vanishes.
std::complex<double> invariantValue(const Certificate& c, double v, double x, double t);

struct FlowReport {
  double maxDrift = 0;  // relative, or absolute when |I(0)| < 1e-8
  int samples = 0;
  bool pass = false;
  double initialModulus = 0;
};

/// Integrates the system from (v0, x0) over [0, T] and tracks |I| on the sample
/// grid. Throws TrajectoryLeftDomain / IntegrationFailure when the run stops early.
FlowReport checkInvariantAlongFlow(const Certificate& c, const vfield::QuadSystem& sys, double v0, double x0,
                                   double T, double driftTol, double integratorTol = 1e-10);

}  // namespace opf::darboux
