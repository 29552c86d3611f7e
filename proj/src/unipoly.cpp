#include "opf/unipoly.hpp"

#include "opf/error.hpp"

namespace opf {

namespace detail {

void appendTerm(std::string& out, const Rat& c, const std::string& monomial) {
  if (c.isZero()) return;
  const bool neg = c.sign() < 0;
  const Rat a = c.abs();
  if (neg)
    out += "-";
  else if (!out.empty())
    out += "+";
  if (monomial.empty()) {
    out += a.toString();
  } else if (a == Rat(1)) {
    out += monomial;
  } else if (a.isInteger()) {
    out += a.toString() + monomial;
  } else {
    out += "(" + a.toString() + ")" + monomial;
  }
}

}  // namespace detail

UniPoly::UniPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rat& c) { return UniPoly(std::vector<Rat>{c}); }

UniPoly UniPoly::monomial(const Rat& c, int power) {
  std::vector<Rat> v(static_cast<size_t>(power) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

std::optional<int> UniPoly::degree() const {
  if (c_.empty()) return std::nullopt;
  return static_cast<int>(c_.size()) - 1;
}

Rat UniPoly::coeff(int i) const {
  if (i < 0 || static_cast<size_t>(i) >= c_.size()) return Rat(0);
  return c_[static_cast<size_t>(i)];
}

Rat UniPoly::leading() const { return c_.empty() ? Rat(0) : c_.back(); }

Rat UniPoly::eval(const Rat& x) const {
  Rat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->toDouble();
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (isZero()) return {};
  return scaled(Rat(1) / leading());
}

UniPoly UniPoly::scaled(const Rat& s) const {
  std::vector<Rat> v = c_;
  for (auto& c : v) c *= s;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::reflected() const {
  std::vector<Rat> v = c_;
  for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return UniPoly(std::move(v));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (isZero() || o.isZero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].isZero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

std::string UniPoly::toString(const std::string& var) const {
  std::string out;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    std::string mono;
    if (i == 1) mono = var;
    if (i > 1) mono = var + "^" + std::to_string(i);
    detail::appendTerm(out, c_[static_cast<size_t>(i)], mono);
  }
  return out.empty() ? "0" : out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.isZero()) throw Error(ErrorCode::PreconditionViolated, "polynomial division by zero");
  const int db = *b.degree();
  const Rat lb = b.leading();
  std::vector<Rat> rem = a.coeffs();
  if (static_cast<int>(rem.size()) - 1 < db) return {UniPoly{}, a};
  std::vector<Rat> quot(rem.size() - static_cast<size_t>(db));
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    const Rat q = rem[static_cast<size_t>(k)] / lb;
    quot[static_cast<size_t>(k - db)] = q;
    if (q.isZero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= q * b.coeff(j);
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.isZero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree(const UniPoly& p) {
  if (p.isConstant()) return p;
  const UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).first;
}

RatFunc::RatFunc(UniPoly n, UniPoly d) {
  if (d.isZero()) throw Error(ErrorCode::PreconditionViolated, "rational function with zero denominator");
  if (n.isZero()) {
    num = {};
    den = UniPoly::constant(Rat(1));
    return;
  }
  const UniPoly g = gcd(n, d);
  n = divmod(n, g).first;
  d = divmod(d, g).first;
  const Rat lead = d.leading();
  num = n.scaled(Rat(1) / lead);
  den = d.scaled(Rat(1) / lead);
}

double RatFunc::eval(double x) const { return num.eval(x) / den.eval(x); }

RatFunc RatFunc::derivative() const {
  return RatFunc(num.derivative() * den - num * den.derivative(), den * den);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num * b.num, a.den * b.den); }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.isZero()) throw Error(ErrorCode::PreconditionViolated, "rational function division by zero");
  return RatFunc(a.num * b.den, a.den * b.num);
}
RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }

std::string RatFunc::toString(const std::string& var) const {
  if (isPolynomial()) return num.scaled(Rat(1) / den.leading()).toString(var);
  return "(" + num.toString(var) + ")/(" + den.toString(var) + ")";
}

}  // namespace opf
