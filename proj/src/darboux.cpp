#include "opf/darboux.hpp"

#include <cmath>
#include <set>

#include "opf/error.hpp"
#include "opf/linsolve.hpp"

namespace opf::darboux {

namespace {

std::string wrapped(const BiPoly& p, const VarNames& names) {
  const std::string s = p.toString(names);
  if (p.terms().size() == 1 && s.find_first_of("+-(") == std::string::npos) return s;
  return "(" + s + ")";
}

// one factor f^e rendered with |e|, the caller decides on * or /
std::string powerOf(const BiPoly& f, const Rat& e, const VarNames& names) {
  const Rat a = e.abs();
  if (a == Rat(1)) return wrapped(f, names);
  if (a == Rat(1, 2)) return "sqrt(" + f.toString(names) + ")";
  if (a.isInteger()) return wrapped(f, names) + "^" + a.toString();
  return wrapped(f, names) + "^(" + a.toString() + ")";
}

std::string coefTimes(const Rat& c, const std::string& what) {
  if (c == Rat(1)) return what;
  if (c == Rat(-1)) return "-" + what;
  if (c.isInteger()) return c.toString() + "*" + what;
  return "(" + c.toString() + ")*" + what;
}

}  // namespace

std::string Certificate::describe() const {
  std::string num, den, exps;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (lambdas[i].isZero()) continue;
    const std::string f = powerOf(curves[i].f, lambdas[i], names);
    if (lambdas[i].sign() > 0)
      num += (num.empty() ? "" : "*") + f;
    else
      den += "/" + f;
  }
  for (std::size_t j = 0; j < expFactors.size(); ++j) {
    if (mus[j].isZero()) continue;
    const auto& e = expFactors[j];
    std::string arg = wrapped(e.g, names);
    if (e.h != BiPoly(1)) arg += "/" + wrapped(e.h, names);
    exps += "*exp(" + coefTimes(mus[j], arg) + ")";
  }
  if (!s.isZero()) exps += "*exp(" + coefTimes(s, "t") + ")";

  std::string out = num.empty() && !den.empty() ? "1" : num;
  out += den;
  if (out.empty()) return exps.empty() ? "1" : exps.substr(1);
  return out + exps;
}

bool expFactorHolds(const vfield::QuadSystem& sys, const ExpFactor& e) {
  if (e.h.isZero()) return false;
  const BiPoly lhs = vfield::lieDerivative(sys, e.g) * e.h - e.g * vfield::lieDerivative(sys, e.h);
  return lhs == e.L * e.h * e.h;
}

void validate(const Problem& p) {
  for (std::size_t i = 0; i < p.curves.size(); ++i) {
    const auto& c = p.curves[i];
    if (c.f.isZero() || vfield::lieDerivative(p.system, c.f) != c.K * c.f)
      throw Error(ErrorCode::InvalidCofactor, "curve " + std::to_string(i + 1) + " (" + c.f.toString(p.system.names) +
                                                  ") does not satisfy Xf = Kf with the given cofactor");
  }
  for (std::size_t j = 0; j < p.expFactors.size(); ++j)
    if (!expFactorHolds(p.system, p.expFactors[j]))
      throw Error(ErrorCode::InvalidCofactor, "exponential factor " + std::to_string(j + 1) + " fails X(g/h) = L");
}

std::optional<Certificate> solveCofactorRelation(const Problem& p, const Rat& s) {
  if (s.isZero()) throw Error(ErrorCode::PreconditionViolated, "s must be nonzero");
  validate(p);

  std::vector<const BiPoly*> cols;
  for (const auto& c : p.curves) cols.push_back(&c.K);
  for (const auto& e : p.expFactors) cols.push_back(&e.L);

  std::set<Monomial> monos{Monomial{0, 0}};
  for (const auto* k : cols)
    for (const auto& [m, c] : k->terms()) monos.insert(m);

  RatMatrix A;
  std::vector<Rat> b;
  for (const auto& m : monos) {
    std::vector<Rat> row;
    for (const auto* k : cols) row.push_back(k->coeff(m.v, m.x));
    A.push_back(std::move(row));
    b.push_back(m == Monomial{0, 0} ? -s : Rat(0));
  }
  if (cols.empty()) return std::nullopt;
  auto sol = solveLinear(A, b);
  if (!sol) return std::nullopt;

  Certificate cert;
  cert.curves = p.curves;
  cert.expFactors = p.expFactors;
  cert.s = s;
  cert.names = p.system.names;
  cert.lambdas.assign(sol->particular.begin(), sol->particular.begin() + static_cast<long>(p.curves.size()));
  cert.mus.assign(sol->particular.begin() + static_cast<long>(p.curves.size()), sol->particular.end());
  cert.nullspace = std::move(sol->nullspace);
  return cert;
}

std::complex<double> invariantValue(const Certificate& c, double v, double x, double t) {
  std::complex<double> value = std::exp(c.s.toDouble() * t);
  for (std::size_t i = 0; i < c.curves.size(); ++i) {
    const Rat& e = c.lambdas[i];
    if (e.isZero()) continue;
    const double f = c.curves[i].f.eval(v, x);
    if (f == 0.0) {
      if (e.sign() < 0) throw Error(ErrorCode::PoleAtPoint, "negative power of a vanishing curve");
      return 0.0;
    }
    if (e.isInteger())
      value *= std::pow(f, e.toDouble());
    else
      value *= std::pow(std::complex<double>(f, 0.0), e.toDouble());
  }
  for (std::size_t j = 0; j < c.expFactors.size(); ++j) {
    if (c.mus[j].isZero()) continue;
    const double h = c.expFactors[j].h.eval(v, x);
    if (h == 0.0) throw Error(ErrorCode::PoleAtPoint, "denominator of an exponential factor vanishes");
    value *= std::exp(c.mus[j].toDouble() * c.expFactors[j].g.eval(v, x) / h);
  }
  return value;
}

FlowReport checkInvariantAlongFlow(const Certificate& c, const vfield::QuadSystem& sys, double v0, double x0,
                                   double T, double driftTol, double integratorTol) {
  ode::Options opt;
  opt.tol = integratorTol;
  opt.samples = 100;
  const auto tr = ode::integrate(ode::CompiledField(sys), v0, x0, T, opt);
  if (tr.reason == ode::StopReason::StepFailure)
    throw Error(ErrorCode::IntegrationFailure, "integrator failed before t = " + std::to_string(T));
  if (tr.reason != ode::StopReason::Completed)
    throw Error(ErrorCode::TrajectoryLeftDomain, "trajectory left the domain before t = " + std::to_string(T));

  FlowReport rep;
  try {
    rep.initialModulus = std::abs(invariantValue(c, v0, x0, 0.0));
    for (const auto& smp : tr.samples) {
      const double m = std::abs(invariantValue(c, smp.v, smp.x, smp.t));
      const double d = std::abs(m - rep.initialModulus);
      rep.maxDrift = std::max(rep.maxDrift, rep.initialModulus < 1e-8 ? d : d / rep.initialModulus);
      ++rep.samples;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PoleAtPoint) throw;
    throw Error(ErrorCode::TrajectoryLeftDomain, std::string("trajectory reached a pole of the invariant: ") + e.what());
  }
  rep.pass = rep.maxDrift < driftTol;
  return rep;
}

}  // namespace opf::darboux
