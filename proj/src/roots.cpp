#include "opf/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "opf/error.hpp"

namespace opf {

namespace {

std::vector<UniPoly> sturmChain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().isZero()) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.isZero()) break;
    chain.push_back(-r);
  }
  if (chain.back().isZero()) chain.pop_back();
  return chain;
}

int signChanges(const std::vector<UniPoly>& chain, const Rat& x) {
  int changes = 0;
  int last = 0;
  for (const auto& s : chain) {
    const int sg = s.eval(x).sign();
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

Rat cauchyBound(const UniPoly& p) {
  Rat m;
  const Rat lead = p.leading().abs();
  for (const auto& c : p.coeffs()) m = std::max(m, c.abs() / lead);
  return m + Rat(1);
}

Rat floorRat(const Rat& a) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), a.num().get_mpz_t(), a.den().get_mpz_t());
  return Rat(f, mpz_class(1));
}

// Splits [lo, hi] at a point that is not a root; the dyadic midpoint unless that is a root.
Rat splitPoint(const UniPoly& p, const Rat& lo, const Rat& hi) {
  for (long k = 1;; ++k) {
    const Rat m = lo + (hi - lo) * Rat(k, 2 * k + 1 + (k == 1 ? -1 : 0));
    if (!p.eval(m).isZero()) return m;
  }
}

}  // namespace

Rat simplestBetween(Rat a, Rat b) {
  if (b < a) std::swap(a, b);
  if (a.sign() <= 0 && b.sign() >= 0) return Rat(0);
  if (b.sign() < 0) return -simplestBetween(-b, -a);
  const Rat fl = floorRat(a);
  if (fl == a) return a;
  if (fl + Rat(1) <= b) return fl + Rat(1);
  return fl + Rat(1) / simplestBetween(Rat(1) / (b - fl), Rat(1) / (a - fl));
}

int countRoots(const UniPoly& p, const Rat& a, const Rat& b) {
  const UniPoly q = squarefree(p);
  if (q.isConstant()) return 0;
  const auto chain = sturmChain(q);
  return signChanges(chain, a) - signChanges(chain, b);
}

std::vector<RealRoot> realRoots(const UniPoly& p) {
  if (p.isZero()) throw Error(ErrorCode::IdenticallyZero, "root isolation of the zero polynomial");
  std::vector<RealRoot> out;
  const UniPoly q = squarefree(p);
  if (q.isConstant()) return out;

  const auto chain = sturmChain(q);
  const Rat bound = cauchyBound(q);

  struct Interval {
    Rat lo, hi;
    int lv, hv;
  };
  std::vector<Interval> work{{-bound, bound, signChanges(chain, -bound), signChanges(chain, bound)}};
  std::vector<std::pair<Rat, Rat>> isolated;
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    const int n = iv.lv - iv.hv;
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(iv.lo, iv.hi);
      continue;
    }
    const Rat m = splitPoint(q, iv.lo, iv.hi);
    const int mv = signChanges(chain, m);
    work.push_back({iv.lo, m, iv.lv, mv});
    work.push_back({m, iv.hi, mv, iv.hv});
  }

  for (auto [lo, hi] : isolated) {
    RealRoot root;
    // q changes sign across a simple root; the endpoints are never roots
    const int slo = q.eval(lo).sign();
    const Rat tiny = Rat(1, 1000000000) * Rat(1, 1000000000);
    for (int it = 0; it < 200 && !root.exact; ++it) {
      const Rat cand = simplestBetween(lo, hi);
      if (q.eval(cand).isZero()) {
        root.exact = cand;
        break;
      }
      if (hi - lo < tiny * (Rat(1) + lo.abs())) break;
      const Rat m = (lo + hi) / Rat(2);
      const int sm = q.eval(m).sign();
      if (sm == 0) {
        root.exact = m;
      } else if (sm == slo) {
        lo = m;
      } else {
        hi = m;
      }
    }
    root.lo = root.exact ? *root.exact : lo;
    root.hi = root.exact ? *root.exact : hi;
    root.value = root.exact ? root.exact->toDouble() : ((lo + hi) / Rat(2)).toDouble();
    out.push_back(std::move(root));
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

std::vector<std::complex<double>> floatRoots(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  std::vector<std::complex<double>> out;
  if (coeffs.size() <= 1) return out;
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n == 1) {
    out.emplace_back(-coeffs[0] / coeffs[1], 0.0);
    return out;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<size_t>(i)] / coeffs.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

}  // namespace opf
