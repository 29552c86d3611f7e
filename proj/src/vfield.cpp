#include "opf/vfield.hpp"

#include <algorithm>

#include "opf/error.hpp"

namespace opf::vfield {

using families::FamilySpec;

int QuadSystem::degree() const {
  return std::max(P.totalDegree().value_or(0), Q.totalDegree().value_or(0));
}

namespace {

void requireMu(const Rat& mu) {
  if (mu.isZero()) throw Error(ErrorCode::ZeroMu, "mu must be nonzero");
}

void requireLambda(const Rat& lambda) {
  if (lambda.sign() <= 0) throw Error(ErrorCode::NonpositiveLambda, "lambda_n must be positive");
}

}  // namespace

QuadSystem buildFamilySystem(const FamilySpec& spec, int n, const Rat& mu) {
  requireMu(mu);
  const Rat lambda = families::lambdaN(spec, n);
  const BiPoly rho = BiPoly::fromUni(spec.rho);
  const BiPoly coupling = BiPoly::fromUni(spec.rho.derivative() - spec.tau);
  QuadSystem sys;
  sys.P = rho.scaled(lambda / mu) + coupling * BiPoly::v() + BiPoly::term(mu, 2, 0);
  sys.Q = rho;
  sys.provenance.source = "family";
  sys.provenance.family = spec.id;
  sys.provenance.n = n;
  sys.provenance.mu = mu;
  sys.provenance.lambda = lambda;
  sys.provenance.alpha = spec.params.alpha;
  sys.provenance.beta = spec.params.beta;
  return sys;
}

QuadSystem buildParametricA(const Rat& lambda, const Rat& mu, const Rat& a, const Rat& b) {
  requireMu(mu);
  requireLambda(lambda);
  const BiPoly rho = BiPoly(1) - BiPoly::term(Rat(1), 0, 2);
  QuadSystem sys;
  sys.P = rho.scaled(lambda / mu) + BiPoly::term(a, 1, 1) + BiPoly::term(b, 1, 0) + BiPoly::term(mu, 2, 0);
  sys.Q = rho;
  sys.provenance.source = "shape-a";
  sys.provenance.mu = mu;
  sys.provenance.a = a;
  sys.provenance.b = b;
  sys.provenance.lambda = lambda;
  return sys;
}

QuadSystem buildParametricB(const Rat& lambda, const Rat& mu, const Rat& a, const Rat& b) {
  requireMu(mu);
  requireLambda(lambda);
  QuadSystem sys;
  sys.P = BiPoly::term(lambda / mu, 0, 1) + BiPoly::term(a, 1, 0) + BiPoly::term(b, 1, 1) + BiPoly::term(mu, 2, 0);
  sys.Q = BiPoly::x();
  sys.provenance.source = "shape-b";
  sys.provenance.mu = mu;
  sys.provenance.a = a;
  sys.provenance.b = b;
  sys.provenance.lambda = lambda;
  return sys;
}

Foliation foliation(const QuadSystem& sys) {
  if (sys.Q.isZero()) throw Error(ErrorCode::DegenerateQ, "x' vanishes identically");
  Foliation f{sys.P, sys.Q};
  if (!sys.Q.isFreeOf(Var::V)) return f;

  UniPoly g = sys.Q.toUni(Var::X);
  for (int k = 0; k <= sys.P.degreeIn(Var::V).value_or(0); ++k) g = gcd(g, sys.P.coeffInV(k));
  if (!g.isConstant()) {
    BiPoly num, den;
    for (int k = 0; k <= sys.P.degreeIn(Var::V).value_or(0); ++k)
      num += BiPoly::fromUni(divmod(sys.P.coeffInV(k), g).first) * BiPoly::term(Rat(1), k, 0);
    den = BiPoly::fromUni(divmod(sys.Q.toUni(Var::X), g).first);
    f = {num, den};
  }
  // a constant denominator is folded into the numerator
  if (f.denominator.totalDegree() == 0) {
    const Rat c = f.denominator.coeff(0, 0);
    f = {f.numerator.scaled(Rat(1) / c), BiPoly(1)};
  }
  return f;
}

BiPoly lieDerivative(const QuadSystem& sys, const BiPoly& f) {
  return sys.P * f.diff(Var::V) + sys.Q * f.diff(Var::X);
}

InvariantCurve invariantCurve(const FamilySpec& spec, int n, const Rat& mu) {
  requireMu(mu);
  const auto p = families::polyOf(spec, n);
  const QuadSystem sys = buildFamilySystem(spec, n, mu);
  InvariantCurve c;
  c.f = BiPoly::fromUni(p.poly).scaled(mu) * BiPoly::v() + BiPoly::fromUni(spec.rho * p.derivative);
  c.cofactor = BiPoly::fromUni(spec.rho.derivative() - spec.tau) + BiPoly::term(mu, 1, 0);
  if (lieDerivative(sys, c.f) != c.cofactor * c.f)
    throw Error(ErrorCode::InvalidCofactor, "invariant curve identity failed for " +
                                                std::string(families::familyName(spec.id)) + " n=" + std::to_string(n));
  return c;
}

InvarianceCheck verifyInvariant(const QuadSystem& sys, const BiPoly& f) {
  if (f.isZero()) throw Error(ErrorCode::PreconditionViolated, "curve polynomial is zero");
  const auto [q, r] = divide(lieDerivative(sys, f), f);
  InvarianceCheck out;
  out.remainder = r;
  if (r.isZero()) out.cofactor = q;
  return out;
}

SymMatrix2 jacobianSymbolic(const QuadSystem& sys) {
  return {{{sys.P.diff(Var::V), sys.P.diff(Var::X)}, {sys.Q.diff(Var::V), sys.Q.diff(Var::X)}}};
}

Matrix2 jacobian(const QuadSystem& sys, double v, double x) {
  const auto J = jacobianSymbolic(sys);
  Matrix2 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = J[i][j].eval(v, x);
  return m;
}

}  // namespace opf::vfield
