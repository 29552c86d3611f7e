#include "opf/integrals.hpp"

#include <cmath>
#include <exception>

#include "opf/error.hpp"
#include "opf/ode.hpp"

namespace opf::integrals {

using families::FamilyId;

namespace {

const UniPoly kRho{Rat(1), Rat(0), Rat(-1)};

void requireMu(const Rat& mu) {
  if (mu.isZero()) throw Error(ErrorCode::ZeroMu, "mu must be nonzero");
}

UniPoly chebT(int n) { return families::polyOf(families::makeFamily(FamilyId::ChebyshevT), n).poly; }
UniPoly chebU(int n) { return families::polyOf(families::makeFamily(FamilyId::ChebyshevU), n).poly; }

void requireN(int n) {
  if (n < 1) throw Error(ErrorCode::PreconditionViolated, "n must be positive");
}

}  // namespace

RiccatiForm linearToRiccati(const LinearForm& l, const Rat& mu) {
  requireMu(mu);
  if (l.rho.isZero()) throw Error(ErrorCode::DegenerateQ, "rho vanishes identically");
  return {RatFunc::of(UniPoly::constant(l.lambda / mu)), RatFunc(l.rho.derivative() - l.tau, l.rho),
          RatFunc(UniPoly::constant(mu), l.rho)};
}

RiccatiForm riccatiOf(const families::FamilySpec& spec, int n, const Rat& mu) {
  return linearToRiccati({spec.rho, spec.tau, families::lambdaN(spec, n)}, mu);
}

LinearForm riccatiToLinear(const RiccatiForm& r) {
  if (r.c2.isZero()) throw Error(ErrorCode::DegenerateC2, "c2 vanishes identically");
  // y'/y = -c2 v turns the Riccati equation into y'' + b1 y' + b0 y = 0
  const RatFunc b1 = -(r.c1 + r.c2.derivative() / r.c2);
  const RatFunc b0 = r.c0 * r.c2;
  if (!b0.num.isConstant()) throw Error(ErrorCode::NotHypergeometric, "b0 is not of the form lambda/rho");

  LinearForm out;
  if (b0.isZero()) {
    out.rho = b1.den;
    out.lambda = Rat(0);
  } else {
    const Rat k(b0.num.leading().sign());
    out.rho = b0.den.scaled(k);
    out.lambda = b0.num.leading() * k;
  }
  const RatFunc tau = b1 * RatFunc::of(out.rho);
  if (!tau.isPolynomial()) throw Error(ErrorCode::NotHypergeometric, "tau is not polynomial");
  out.tau = tau.num.scaled(Rat(1) / tau.den.leading());
  if (out.rho.degree().value_or(0) > 2 || out.tau.degree().value_or(0) > 1)
    throw Error(ErrorCode::NotHypergeometric, "degrees exceed (2, 1)");
  return out;
}

ReducedEquation reducedEquation(int n) {
  const Rat lam(n * n);
  return {UniPoly{Rat(-2) - Rat(4) * lam, Rat(0), Rat(4) * lam - Rat(1)}, (kRho * kRho).scaled(Rat(4))};
}

vfield::QuadSystem reducedSystem(int n) {
  const ReducedEquation r = reducedEquation(n);
  const BiPoly w = BiPoly::v();
  const BiPoly carrier = BiPoly::fromUni(r.denominator);
  vfield::QuadSystem s{BiPoly::fromUni(r.numerator) - carrier * w * w, carrier, {}, {"w", "x"}};
  s.provenance.source = "chebyshev-reduced";
  s.provenance.n = n;
  s.provenance.lambda = Rat(n * n);
  return s;
}

vfield::QuadSystem chebyshevSystem(int n, const Rat& mu) {
  requireMu(mu);
  return vfield::buildFamilySystem(families::makeFamily(FamilyId::ChebyshevT), n, mu);
}

SolutionResidual chebyshevSolutionsResidual(int n, const std::vector<double>& samplePts) {
  requireN(n);
  const Rat lam(n * n);
  const UniPoly T = chebT(n), U = chebU(n - 1);
  SolutionResidual out;
  out.residualT = kRho * T.derivative().derivative() - UniPoly::x() * T.derivative() + T.scaled(lam);

  const UniPoly U1 = U.derivative(), U2 = U1.derivative();
  for (double x : samplePts) {
    const double rho = 1 - x * x;
    if (rho == 0.0) throw Error(ErrorCode::SingularSamplePoint, "sample point at x = +-1");
    const std::complex<double> s = std::sqrt(std::complex<double>(rho, 0.0));
    const double u = U.eval(x), du = U1.eval(x), ddu = U2.eval(x);
    // y = U s with s' = -x/s, s'' = -1/s - x^2/s^3
    const std::complex<double> y = u * s;
    const std::complex<double> dy = du * s - x * u / s;
    const std::complex<double> ddy = ddu * s - 2.0 * x * du / s - u / s - x * x * u / (s * s * s);
    out.maxResidualU = std::max(out.maxResidualU, std::abs(rho * ddy - x * dy + lam.toDouble() * y));
    out.maxResidualT = std::max(out.maxResidualT, std::abs(out.residualT.eval(x)));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Expr::Node {
  enum class Op { Const, Dep, Poly, Sqrt, Add, Sub, Mul, Div, Neg } op;
  Rat c;
  UniPoly p;
  std::string label;
  std::shared_ptr<const Node> a, b;
};

Expr Expr::constant(const Rat& c) { return Expr(std::make_shared<Node>(Node{Node::Op::Const, c, {}, {}, {}, {}})); }
Expr Expr::dependent(const std::string& name) {
  return Expr(std::make_shared<Node>(Node{Node::Op::Dep, {}, {}, name, {}, {}}));
}
Expr Expr::poly(const UniPoly& p, const std::string& label) {
  return Expr(std::make_shared<Node>(Node{Node::Op::Poly, {}, p, label, {}, {}}));
}
Expr Expr::sqrtRho() { return Expr(std::make_shared<Node>(Node{Node::Op::Sqrt, {}, {}, "sqrt(1-x^2)", {}, {}})); }

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<Expr::Node>(Expr::Node{Expr::Node::Op::Add, {}, {}, {}, a.node_, b.node_}));
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<Expr::Node>(Expr::Node{Expr::Node::Op::Sub, {}, {}, {}, a.node_, b.node_}));
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<Expr::Node>(Expr::Node{Expr::Node::Op::Mul, {}, {}, {}, a.node_, b.node_}));
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<Expr::Node>(Expr::Node{Expr::Node::Op::Div, {}, {}, {}, a.node_, b.node_}));
}
Expr operator-(const Expr& a) {
  return Expr(std::make_shared<Expr::Node>(Expr::Node{Expr::Node::Op::Neg, {}, {}, {}, a.node_, {}}));
}

std::complex<double> Expr::eval(double dep, double x) const {
  struct Walk {
    static std::complex<double> go(const Node& n, double dep, double x) {
      using Op = Node::Op;
      switch (n.op) {
        case Op::Const: return n.c.toDouble();
        case Op::Dep: return dep;
        case Op::Poly: return n.p.eval(x);
        case Op::Sqrt: return std::sqrt(std::complex<double>(1 - x * x, 0.0));
        case Op::Add: return go(*n.a, dep, x) + go(*n.b, dep, x);
        case Op::Sub: return go(*n.a, dep, x) - go(*n.b, dep, x);
        case Op::Mul: return go(*n.a, dep, x) * go(*n.b, dep, x);
        case Op::Neg: return -go(*n.a, dep, x);
        case Op::Div: {
          const auto d = go(*n.b, dep, x);
          if (d == 0.0) throw Error(ErrorCode::PoleAtPoint, "division by zero in the first integral");
          return go(*n.a, dep, x) / d;
        }
      }
      return 0.0;
    }
  };
  return Walk::go(*node_, dep, x);
}

std::string Expr::toString() const {
  struct Walk {
    static std::string go(const Node& n) {
      using Op = Node::Op;
      switch (n.op) {
        case Op::Const: return n.c.sign() < 0 || !n.c.isInteger() ? "(" + n.c.toString() + ")" : n.c.toString();
        case Op::Dep:
        case Op::Poly:
        case Op::Sqrt: return n.label;
        case Op::Add: return "(" + go(*n.a) + " + " + go(*n.b) + ")";
        case Op::Sub: return "(" + go(*n.a) + " - " + go(*n.b) + ")";
        case Op::Mul: return go(*n.a) + "*" + go(*n.b);
        case Op::Div: return go(*n.a) + "/" + go(*n.b);
        case Op::Neg: return "-" + go(*n.a);
      }
      return "?";
    }
  };
  return Walk::go(*node_);
}

std::complex<double> FirstIntegralExpr::eval(double dep, double x) const {
  const auto d = denominator.eval(dep, x);
  if (d == 0.0) throw Error(ErrorCode::PoleAtPoint, "first integral has a pole here");
  return numerator.eval(dep, x) / d;
}

std::string FirstIntegralExpr::toString() const { return "(" + numerator.toString() + ")/(" + denominator.toString() + ")"; }

namespace {

struct ChebParts {
  Expr T, dT, U, dU, x, rho;
};

ChebParts parts(int n) {
  requireN(n);
  const UniPoly T = chebT(n), U = chebU(n - 1);
  const std::string tn = "T_" + std::to_string(n), um = "U_" + std::to_string(n - 1);
  return {Expr::poly(T, tn),         Expr::poly(T.derivative(), tn + "'"), Expr::poly(U, um),
          Expr::poly(U.derivative(), um + "'"), Expr::poly(UniPoly::x(), "x"), Expr::poly(kRho, "(1-x^2)")};
}

}  // namespace

FirstIntegralExpr firstIntegralW(int n) {
  const ChebParts c = parts(n);
  const Expr w = Expr::dependent("w");
  const Expr two = Expr::constant(Rat(2)), three = Expr::constant(Rat(3));
  FirstIntegralExpr out{"w", n, std::nullopt,
                        (two * c.rho * (c.dU - w * c.U) - three * c.x * c.U) * Expr::sqrtRho(),
                        two * c.rho * (c.dT - w * c.T) - c.x * c.T};
  return out;
}

FirstIntegralExpr firstIntegralV(int n, const Rat& mu) {
  requireMu(mu);
  const ChebParts c = parts(n);
  const Expr mv = Expr::constant(mu) * Expr::dependent("v");
  return {"v", n, mu, (c.dU * c.rho + c.U * (mv - c.x)) * Expr::sqrtRho(), c.dT * c.rho + mv * c.T};
}

Bridge bridgeWV(const Rat& mu) {
  requireMu(mu);
  return {mu};
}

double Bridge::toW(double v, double x) const {
  const double rho = 1 - x * x;
  if (rho == 0.0) throw Error(ErrorCode::SingularAtPMOne, "bridge undefined at x = +-1");
  return -x / (2 * rho) - mu.toDouble() * v / rho;
}

double Bridge::toV(double w, double x) const {
  const double rho = 1 - x * x;
  if (rho == 0.0) throw Error(ErrorCode::SingularAtPMOne, "bridge undefined at x = +-1");
  return -(rho * w) / mu.toDouble() - x / (2 * mu.toDouble());
}

FlowCheck checkFirstIntegralFlow(const FirstIntegralExpr& expr, const vfield::QuadSystem& sys,
                                 const std::vector<std::array<double, 2>>& starts, double T, double tol,
                                 double integratorTol) {
  const ode::CompiledField field(sys);
  const long count = static_cast<long>(starts.size());
  FlowCheck out;
  out.drifts.assign(starts.size(), 0.0);
  std::vector<char> recip(starts.size(), 0);
  std::vector<std::exception_ptr> errors(starts.size());

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      ode::Options opt;
      opt.tol = integratorTol;
      const auto tr = ode::integrate(field, starts[i][0], starts[i][1], T, opt);
      if (tr.reason != ode::StopReason::Completed)
        throw Error(ErrorCode::TrajectoryLeftDomain,
                    "trajectory stopped early (" + std::string(ode::stopReasonName(tr.reason)) + ")");
      std::vector<std::complex<double>> num, den;
      bool nearPole = false;
      for (const auto& s : tr.samples) {
        num.push_back(expr.numerator.eval(s.v, s.x));
        den.push_back(expr.denominator.eval(s.v, s.x));
        nearPole = nearPole || std::abs(den.back()) < 1e-8;
      }
      recip[i] = nearPole;
      double i0 = 0, drift = 0;
      for (std::size_t k = 0; k < num.size(); ++k) {
        const auto& top = nearPole ? den[k] : num[k];
        const auto& bottom = nearPole ? num[k] : den[k];
        if (bottom == 0.0) throw Error(ErrorCode::TrajectoryLeftDomain, "trajectory reached a pole of I and of 1/I");
        const double m = std::abs(top / bottom);
        if (k == 0) i0 = m;
        const double d = std::abs(m - i0);
        drift = std::max(drift, i0 < 1e-8 ? d : d / i0);
      }
      out.drifts[i] = drift;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < starts.size(); ++i) {
    out.reciprocal.push_back(recip[i] != 0);
    out.maxDrift = std::max(out.maxDrift, out.drifts[i]);
  }
  out.pass = out.maxDrift < tol;
  return out;
}

}  // namespace opf::integrals
