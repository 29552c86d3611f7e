#include "opf/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "opf/error.hpp"
#include "opf/roots.hpp"

namespace opf::classify {

using vfield::QuadSystem;
using Mat2 = std::array<std::array<Rat, 2>, 2>;

std::string Coord::toString() const {
  if (exact) return exact->toString();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string_view chartName(Chart c) {
  switch (c) {
    case Chart::Finite: return "finite";
    case Chart::U1: return "U1";
    case Chart::U2: return "U2";
    case Chart::V1: return "V1";
    case Chart::V2: return "V2";
  }
  return "?";
}

std::string_view kindName(Kind k) {
  switch (k) {
    case Kind::Saddle: return "Saddle";
    case Kind::NodeStable: return "NodeStable";
    case Kind::NodeUnstable: return "NodeUnstable";
    case Kind::FocusStable: return "FocusStable";
    case Kind::FocusUnstable: return "FocusUnstable";
    case Kind::CenterOrWeakFocus: return "CenterOrWeakFocus";
    case Kind::SaddleNode: return "SaddleNode";
    case Kind::TopologicalSaddle: return "TopologicalSaddle";
    case Kind::TopologicalNode: return "TopologicalNode";
    case Kind::Cusp: return "Cusp";
    case Kind::EllipticHyperbolicSector: return "EllipticHyperbolicSector";
    case Kind::NilpotentNode: return "NilpotentNode";
    case Kind::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string_view stabilityName(Stability s) {
  switch (s) {
    case Stability::None: return "none";
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

Classification reversed(Classification c) {
  switch (c.kind) {
    case Kind::NodeStable: c.kind = Kind::NodeUnstable; break;
    case Kind::NodeUnstable: c.kind = Kind::NodeStable; break;
    case Kind::FocusStable: c.kind = Kind::FocusUnstable; break;
    case Kind::FocusUnstable: c.kind = Kind::FocusStable; break;
    default: break;
  }
  if (c.stability == Stability::Stable)
    c.stability = Stability::Unstable;
  else if (c.stability == Stability::Unstable)
    c.stability = Stability::Stable;
  if (auto* e = std::get_if<EigenEvidence>(&c.evidence)) {
    e->l1 = -e->l1;
    e->l2 = -e->l2;
  } else if (auto* s = std::get_if<SemiEvidence>(&c.evidence)) {
    s->am = -s->am;
    s->lambda = -s->lambda;
  }
  return c;
}

// ---------------------------------------------------------------------------
// critical points

namespace {

[[noreturn]] void nonIsolated(const UniPoly& g) {
  throw Error(ErrorCode::NonIsolatedCritSet, "P and Q share the factor " + g.toString());
}

UniPoly contentIn(const BiPoly& p, Var other) {
  UniPoly g;
  const int d = p.degreeIn(other).value_or(0);
  for (int k = 0; k <= d; ++k) g = gcd(g, other == Var::V ? p.coeffInV(k) : p.coeffInX(k));
  return g;
}

CritPoint makePoint(Var w, const Coord& atW, const Coord& other) {
  CritPoint p;
  if (w == Var::X) {
    p.x = atW;
    p.v = other;
  } else {
    p.v = atW;
    p.x = other;
  }
  return p;
}

// real roots in the other variable of S with w fixed at an irrational value
std::vector<double> floatFiber(const BiPoly& S, Var w, double wv) {
  const Var other = w == Var::X ? Var::V : Var::X;
  const int d = S.degreeIn(other).value_or(0);
  std::vector<double> coeffs(d + 1);
  for (int k = 0; k <= d; ++k) coeffs[k] = (other == Var::V ? S.coeffInV(k) : S.coeffInX(k)).eval(wv);
  std::vector<double> out;
  for (const auto& z : floatRoots(coeffs))
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real()))) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

// R depends on w only.
std::vector<CritPoint> solveWithUnivariate(const BiPoly& R, Var w, const BiPoly& S) {
  const UniPoly r = R.toUni(w);
  if (r.isConstant()) return {};
  const Var other = w == Var::X ? Var::V : Var::X;
  const UniPoly g = gcd(r, contentIn(S, other));
  if (!g.isConstant()) nonIsolated(g);

  std::vector<CritPoint> pts;
  for (const auto& root : realRoots(r)) {
    if (root.exact) {
      const UniPoly fiber = S.restrict(w, *root.exact);
      if (fiber.isConstant()) continue;
      for (const auto& o : realRoots(fiber)) {
        const Coord oc = o.exact ? Coord::of(*o.exact) : Coord::of(o.value);
        pts.push_back(makePoint(w, Coord::of(*root.exact), oc));
      }
    } else {
      for (double o : floatFiber(S, w, root.value)) pts.push_back(makePoint(w, Coord::of(root.value), Coord::of(o)));
    }
  }
  return pts;
}

// Fraction-free determinant over Q[x].
UniPoly bareiss(std::vector<std::vector<UniPoly>> M) {
  const std::size_t n = M.size();
  if (n == 0) return UniPoly::constant(Rat(1));
  UniPoly prev = UniPoly::constant(Rat(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].isZero()) {
      std::size_t p = k + 1;
      while (p < n && M[p][k].isZero()) ++p;
      if (p == n) return UniPoly();
      std::swap(M[p], M[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = divmod(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev).first;
    prev = M[k][k];
  }
  return negate ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

UniPoly resultantInV(const BiPoly& P, const BiPoly& Q) {
  const int dp = P.degreeIn(Var::V).value_or(0), dq = Q.degreeIn(Var::V).value_or(0);
  const int n = dp + dq;
  std::vector<std::vector<UniPoly>> S(n, std::vector<UniPoly>(n));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) S[r][r + dp - k] = P.coeffInV(k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) S[dq + r][r + dq - k] = Q.coeffInV(k);
  return bareiss(std::move(S));
}

void newton(const QuadSystem& sys, double& v, double& x) {
  for (int it = 0; it < 20; ++it) {
    const double p = sys.P.eval(v, x), q = sys.Q.eval(v, x);
    const auto J = vfield::jacobian(sys, v, x);
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (det == 0) return;
    const double dv = (J[1][1] * p - J[0][1] * q) / det;
    const double dx = (-J[1][0] * p + J[0][0] * q) / det;
    v -= dv;
    x -= dx;
    if (std::abs(dv) + std::abs(dx) < 1e-16 * (1 + std::abs(v) + std::abs(x))) return;
  }
}

std::vector<CritPoint> solveGeneric(const QuadSystem& sys) {
  const BiPoly &P = sys.P, &Q = sys.Q;
  const UniPoly common = gcd(contentIn(P, Var::V), contentIn(Q, Var::V));
  if (!common.isConstant()) nonIsolated(common);
  const UniPoly res = resultantInV(P, Q);
  if (res.isZero()) throw Error(ErrorCode::NonIsolatedCritSet, "P and Q share a factor depending on v");

  std::vector<CritPoint> pts;
  for (const auto& root : realRoots(res)) {
    if (root.exact) {
      const UniPoly g = gcd(P.restrict(Var::X, *root.exact), Q.restrict(Var::X, *root.exact));
      if (g.isConstant()) continue;
      for (const auto& o : realRoots(g)) {
        CritPoint c;
        c.x = Coord::of(*root.exact);
        c.v = o.exact ? Coord::of(*o.exact) : Coord::of(o.value);
        pts.push_back(c);
      }
    } else {
      const BiPoly& S = P.degreeIn(Var::V).value_or(0) > 0 ? P : Q;
      const BiPoly& other = &S == &P ? Q : P;
      for (double v : floatFiber(S, Var::X, root.value)) {
        const double scale = 1 + std::abs(v) + std::abs(root.value);
        if (std::abs(other.eval(v, root.value)) > 1e-6 * scale * scale) continue;
        double vv = v, xx = root.value;
        newton(sys, vv, xx);
        pts.push_back({Coord::of(vv), Coord::of(xx), Chart::Finite});
      }
    }
  }
  return pts;
}

}  // namespace

std::vector<CritPoint> findFiniteCritPoints(const QuadSystem& sys) {
  const BiPoly &P = sys.P, &Q = sys.Q;
  if (P.isZero() || Q.isZero()) {
    const BiPoly& R = P.isZero() ? Q : P;
    if (!R.isZero() && R.totalDegree() == 0) return {};
    throw Error(ErrorCode::NonIsolatedCritSet, "a component of the field vanishes identically");
  }
  std::vector<CritPoint> pts;
  if (Q.isFreeOf(Var::V))
    pts = solveWithUnivariate(Q, Var::X, P);
  else if (P.isFreeOf(Var::V))
    pts = solveWithUnivariate(P, Var::X, Q);
  else if (Q.isFreeOf(Var::X))
    pts = solveWithUnivariate(Q, Var::V, P);
  else if (P.isFreeOf(Var::X))
    pts = solveWithUnivariate(P, Var::V, Q);
  else
    pts = solveGeneric(sys);

  std::sort(pts.begin(), pts.end(), [](const CritPoint& a, const CritPoint& b) {
    return a.x.value != b.x.value ? a.x.value < b.x.value : a.v.value < b.v.value;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const CritPoint& a, const CritPoint& b) {
                          return std::abs(a.v.value - b.v.value) + std::abs(a.x.value - b.x.value) < 1e-12;
                        }),
            pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// hyperbolic points

Classification classifyHyperbolic(std::complex<double> l1, std::complex<double> l2) {
  const double scale = std::max({1.0, std::abs(l1), std::abs(l2)});
  if (std::abs(l1) <= 1e-12 * scale || std::abs(l2) <= 1e-12 * scale)
    throw Error(ErrorCode::NotApplicable, "zero eigenvalue");
  Classification c;
  c.evidence = EigenEvidence{l1, l2, false};
  const bool complexPair = std::abs(l1.imag()) > 1e-12 * scale;
  if (complexPair) {
    if (std::abs(l1.real()) <= 1e-12 * scale)
      c.kind = Kind::CenterOrWeakFocus;
    else
      c.kind = l1.real() > 0 ? Kind::FocusUnstable : Kind::FocusStable;
  } else if ((l1.real() > 0) != (l2.real() > 0)) {
    c.kind = Kind::Saddle;
  } else {
    c.kind = l1.real() > 0 ? Kind::NodeUnstable : Kind::NodeStable;
  }
  return c;
}

Classification classifyLinearExact(const Mat2& J) {
  const Rat det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const Rat tr = J[0][0] + J[1][1];
  if (det.isZero()) throw Error(ErrorCode::NotApplicable, "zero eigenvalue");
  const Rat disc = tr * tr - Rat(4) * det;
  const std::complex<double> root = std::sqrt(std::complex<double>(disc.toDouble(), 0.0));
  const std::complex<double> l1 = (tr.toDouble() + root) / 2.0, l2 = (tr.toDouble() - root) / 2.0;

  Classification c;
  c.evidence = EigenEvidence{l1, l2, true};
  if (det.sign() < 0)
    c.kind = Kind::Saddle;
  else if (disc.sign() >= 0)
    c.kind = tr.sign() > 0 ? Kind::NodeUnstable : Kind::NodeStable;
  else if (tr.isZero())
    c.kind = Kind::CenterOrWeakFocus;
  else
    c.kind = tr.sign() > 0 ? Kind::FocusUnstable : Kind::FocusStable;
  return c;
}

// ---------------------------------------------------------------------------
// normalization

namespace {

std::array<Rat, 2> kernelOf(const Mat2& A) {
  const auto& row = (!A[0][0].isZero() || !A[0][1].isZero()) ? A[0] : A[1];
  return {-row[1], row[0]};
}

std::array<Rat, 2> firstNonzeroOne(std::array<Rat, 2> e) {
  const Rat lead = !e[0].isZero() ? e[0] : e[1];
  return {e[0] / lead, e[1] / lead};
}

Mat2 inverse(const Mat2& M) {
  const Rat det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  return {{{M[1][1] / det, -M[0][1] / det}, {-M[1][0] / det, M[0][0] / det}}};
}

bool isZero(const Mat2& M) {
  for (const auto& r : M)
    for (const auto& e : r)
      if (!e.isZero()) return false;
  return true;
}

}  // namespace

LocalSystem normalizeAtPoint(const QuadSystem& sys, const CritPoint& pt) {
  if (!pt.exact()) throw Error(ErrorCode::PreconditionViolated, "exact normalization needs a rational point");
  const Rat pv = *pt.v.exact, px = *pt.x.exact;
  if (!sys.P.eval(pv, px).isZero() || !sys.Q.eval(pv, px).isZero())
    throw Error(ErrorCode::NotACriticalPoint, "(" + pv.toString() + ", " + px.toString() + ") is not a critical point");

  LocalSystem out;
  const auto Js = vfield::jacobianSymbolic(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.linear[i][j] = Js[i][j].eval(pv, px);
  const Mat2& J = out.linear;
  const Rat det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const Rat tr = J[0][0] + J[1][1];

  Mat2 M{{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
  if (isZero(J)) {
    out.type = LinearType::Zero;
  } else if (!det.isZero()) {
    out.type = LinearType::Hyperbolic;
  } else if (!tr.isZero()) {
    out.type = LinearType::SemiHyperbolic;
    const auto e0 = firstNonzeroOne(kernelOf(J));
    Mat2 shifted = J;
    shifted[0][0] -= tr;
    shifted[1][1] -= tr;
    auto e1 = kernelOf(shifted);
    const Rat lead = !e1[1].isZero() ? e1[1] : e1[0];
    e1 = {e1[0] / lead, e1[1] / lead};
    M = {{{e0[0], e1[0]}, {e0[1], e1[1]}}};
  } else {
    out.type = LinearType::Nilpotent;
    std::array<Rat, 2> e1{Rat(0), Rat(1)};
    if (J[0][1].isZero() && J[1][1].isZero()) e1 = {Rat(1), Rat(0)};
    const std::array<Rat, 2> e0{J[0][0] * e1[0] + J[0][1] * e1[1], J[1][0] * e1[0] + J[1][1] * e1[1]};
    M = {{{e0[0], e1[0]}, {e0[1], e1[1]}}};
  }

  const BiPoly c = BiPoly::v(), h = BiPoly::x();
  const BiPoly forV = BiPoly(pv) + c.scaled(M[0][0]) + h.scaled(M[0][1]);
  const BiPoly forX = BiPoly(px) + c.scaled(M[1][0]) + h.scaled(M[1][1]);
  const BiPoly P1 = sys.P.substitute(forV, forX), Q1 = sys.Q.substitute(forV, forX);
  const Mat2 Mi = inverse(M);
  out.sys.P = P1.scaled(Mi[0][0]) + Q1.scaled(Mi[0][1]);
  out.sys.Q = P1.scaled(Mi[1][0]) + Q1.scaled(Mi[1][1]);
  out.sys.names = sys.names;
  out.sys.provenance = sys.provenance;
  out.sys.provenance.source = "local";
  out.transform = {pv, px, M};
  return out;
}

// ---------------------------------------------------------------------------
// semi-hyperbolic and nilpotent points

Classification kindFromSemi(const SemiEvidence& e) {
  Classification c;
  c.evidence = e;
  if (e.m % 2 == 0) {
    c.kind = Kind::SaddleNode;
  } else if (e.am.sign() * e.lambda.sign() < 0) {
    c.kind = Kind::TopologicalSaddle;
  } else {
    c.kind = Kind::TopologicalNode;
    c.stability = e.am.sign() > 0 ? Stability::Unstable : Stability::Stable;
  }
  return c;
}

namespace {

void requireLinearPart(const QuadSystem& s, const Rat& pv, const Rat& px, const Rat& qv, const Rat& qx) {
  const bool ok = s.P.coeff(0, 0).isZero() && s.Q.coeff(0, 0).isZero() && s.P.coeff(1, 0) == pv &&
                  s.P.coeff(0, 1) == px && s.Q.coeff(1, 0) == qv && s.Q.coeff(0, 1) == qx;
  if (!ok) throw Error(ErrorCode::PreconditionViolated, "local system is not in normal position");
}

}  // namespace

Classification classifySemiHyperbolic(const QuadSystem& local, const Rat& lambda, int order) {
  if (lambda.isZero()) throw Error(ErrorCode::PreconditionViolated, "lambda must be nonzero");
  requireLinearPart(local, Rat(0), Rat(0), Rat(0), lambda);
  const BiPoly& A = local.P;
  const BiPoly B = local.Q - BiPoly::term(lambda, 0, 1);
  const PowerSeries f = solveImplicitSeries(lambda, B, order);
  const PowerSeries g = composeSeries(A, f, Var::X);
  const auto lead = g.leading();
  if (!lead)
    throw Error(ErrorCode::SeriesInconclusive, "g vanishes through order " + std::to_string(order));
  return kindFromSemi({lead->power, lead->coeff, lambda, order});
}

Classification kindFromNilpotent(const NilpotentEvidence& e) {
  if (!e.m) {
    if (!e.n) throw Error(ErrorCode::RuleUndecided, "F and G vanish through order " + std::to_string(e.order));
    throw Error(ErrorCode::SeriesInconclusive, "F vanishes through order " + std::to_string(e.order));
  }
  Classification c;
  c.evidence = e;
  const int m = *e.m;
  const Rat& a = *e.a;
  if (!e.n) {
    if (m % 2 == 0)
      c.kind = Kind::Cusp;
    else
      c.kind = a.sign() > 0 ? Kind::TopologicalSaddle : Kind::CenterOrWeakFocus;
    return c;
  }
  const int n = *e.n;
  const Rat& b = *e.b;
  if (m % 2 == 0) {
    c.kind = m < 2 * n + 1 ? Kind::Cusp : Kind::SaddleNode;
    return c;
  }
  if (a.sign() > 0) {
    c.kind = Kind::TopologicalSaddle;
    return c;
  }
  const Rat disc = b * b + Rat(4) * a * Rat(n + 1);
  if (m < 2 * n + 1 || (m == 2 * n + 1 && disc.sign() < 0)) {
    c.kind = Kind::CenterOrWeakFocus;
  } else if (n % 2 == 0) {
    c.kind = Kind::NilpotentNode;
    c.stability = b.sign() < 0 ? Stability::Stable : Stability::Unstable;
  } else {
    c.kind = Kind::EllipticHyperbolicSector;
  }
  return c;
}

Classification classifyNilpotent(const QuadSystem& local, int order) {
  requireLinearPart(local, Rat(0), Rat(1), Rat(0), Rat(0));
  const BiPoly A = local.P - BiPoly::x();
  const BiPoly& B = local.Q;
  const PowerSeries f = solveImplicitSeries(Rat(1), A, order);
  const PowerSeries F = composeSeries(B, f, Var::X);
  const PowerSeries G = composeSeries(A.diff(Var::V) + B.diff(Var::X), f, Var::X);
  NilpotentEvidence e;
  e.order = order;
  if (auto l = F.leading()) {
    e.m = l->power;
    e.a = l->coeff;
  }
  if (auto l = G.leading()) {
    e.n = l->power;
    e.b = l->coeff;
  }
  return kindFromNilpotent(e);
}

// ---------------------------------------------------------------------------

namespace {

template <class Fn>
Classification growOrder(Fn&& attempt, const char* what) {
  std::string last;
  for (int N = std::min(defaultSeriesOrder(), kMaxSeriesOrder); N <= kMaxSeriesOrder; N += 4) {
    try {
      return attempt(N);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SeriesInconclusive && e.code() != ErrorCode::RuleUndecided) throw;
      last = e.what();
    }
  }
  Classification c;
  c.kind = Kind::Degenerate;
  c.note = std::string(what) + ": " + last;
  return c;
}

}  // namespace

Classification classifyPoint(const QuadSystem& sys, const CritPoint& pt) {
  if (pt.exact()) {
    const LocalSystem ls = normalizeAtPoint(sys, pt);
    switch (ls.type) {
      case LinearType::Hyperbolic: return classifyLinearExact(ls.linear);
      case LinearType::SemiHyperbolic: {
        const Rat lambda = ls.linear[0][0] + ls.linear[1][1];
        return growOrder([&](int N) { return classifySemiHyperbolic(ls.sys, lambda, N); }, "semi-hyperbolic");
      }
      case LinearType::Nilpotent:
        return growOrder([&](int N) { return classifyNilpotent(ls.sys, N); }, "nilpotent");
      case LinearType::Zero: {
        Classification c;
        c.note = "linear part vanishes";
        return c;
      }
    }
  }

  const auto J = vfield::jacobian(sys, pt.v.value, pt.x.value);
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const double tr = J[0][0] + J[1][1];
  const double scale = std::max({1.0, std::abs(J[0][0]), std::abs(J[0][1]), std::abs(J[1][0]), std::abs(J[1][1])});
  if (std::abs(det) <= 1e-10 * scale * scale) {
    Classification c;
    c.note = "non-hyperbolic point with irrational coordinates";
    return c;
  }
  const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr - 4 * det, 0.0));
  return classifyHyperbolic((tr + root) / 2.0, (tr - root) / 2.0);
}

std::vector<CritReport> classifyFinite(const QuadSystem& sys) {
  std::vector<CritReport> out;
  for (const auto& p : findFiniteCritPoints(sys)) out.push_back({p, classifyPoint(sys, p)});
  return out;
}

}  // namespace opf::classify
