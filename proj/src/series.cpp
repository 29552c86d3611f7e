#include "opf/series.hpp"

#include <cstdlib>
#include <string>

#include "opf/error.hpp"

namespace opf {

int defaultSeriesOrder() {
  if (const char* env = std::getenv("OPF_SERIES_ORDER")) {
    try {
      const int n = std::stoi(env);
      if (n >= 2 && n <= 64) return n;
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeriesOrder;
}

PowerSeries::PowerSeries(std::vector<Rat> coeffs, int order) : c_(std::move(coeffs)) {
  c_.resize(static_cast<size_t>(order) + 1);
}

PowerSeries PowerSeries::variable(int order) {
  PowerSeries s(order);
  if (order >= 1) s[1] = Rat(1);
  return s;
}

bool PowerSeries::isZero() const {
  for (const auto& c : c_)
    if (!c.isZero()) return false;
  return true;
}

std::optional<PowerSeries::Leading> PowerSeries::leading() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].isZero()) return Leading{static_cast<int>(i), c_[i]};
  return std::nullopt;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

PowerSeries PowerSeries::scaled(const Rat& s) const {
  PowerSeries r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int n = std::min(a.order(), b.order());
  PowerSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].isZero()) continue;
    for (int j = 0; i + j <= n; ++j)
      if (!b[j].isZero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

PowerSeries::Leading leadingTerm(const PowerSeries& s) {
  if (auto l = s.leading()) return *l;
  throw Error(ErrorCode::TruncationTooLow, "series vanishes through order " + std::to_string(s.order()));
}

PowerSeries composeSeries(const BiPoly& outer, const PowerSeries& inner, Var intoVar) {
  const int n = inner.order();
  if (outer.isZero()) return PowerSeries(n);
  const int dt = *outer.degreeIn(intoVar == Var::X ? Var::V : Var::X);
  const int ds = *outer.degreeIn(intoVar);
  std::vector<PowerSeries> tp{PowerSeries(std::vector<Rat>{Rat(1)}, n)};
  std::vector<PowerSeries> sp{tp.front()};
  const PowerSeries t = PowerSeries::variable(n);
  for (int i = 1; i <= dt; ++i) tp.push_back(tp.back() * t);
  for (int i = 1; i <= ds; ++i) sp.push_back(sp.back() * inner);

  PowerSeries r(n);
  for (const auto& [m, c] : outer.terms()) {
    const int tPow = intoVar == Var::X ? m.v : m.x;
    const int sPow = intoVar == Var::X ? m.x : m.v;
    r += (tp[static_cast<size_t>(tPow)] * sp[static_cast<size_t>(sPow)]).scaled(c);
  }
  return r;
}

PowerSeries solveImplicitSeries(const Rat& lin, const BiPoly& B, int order) {
  if (lin.isZero()) throw Error(ErrorCode::PreconditionViolated, "implicit series needs a nonzero linear coefficient");
  for (const auto& [m, c] : B.terms())
    if (m.total() < 2)
      throw Error(ErrorCode::PreconditionViolated, "B has terms of order < 2: " + B.toString());

  // With B free of low-order terms, the t^k coefficient of B(t, f) only involves
  // coefficients of f below k, so each pass fixes one more coefficient.
  PowerSeries f(order);
  for (int k = 1; k <= order; ++k) {
    const PowerSeries b = composeSeries(B, f, Var::X);
    f[k] = -b[k] / lin;
  }
  return f;
}

}  // namespace opf
