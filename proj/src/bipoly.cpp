#include "opf/bipoly.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "opf/error.hpp"

namespace opf {

BiPoly::BiPoly(const Rat& c) {
  if (!c.isZero()) terms_.emplace(Monomial{0, 0}, c);
}

BiPoly::BiPoly(Terms terms) {
  for (auto& [m, c] : terms)
    if (!c.isZero()) terms_.emplace(m, c);
}

BiPoly BiPoly::var(Var which) { return which == Var::V ? term(Rat(1), 1, 0) : term(Rat(1), 0, 1); }

BiPoly BiPoly::term(const Rat& c, int vPow, int xPow) {
  BiPoly p;
  p.add(Monomial{vPow, xPow}, c);
  return p;
}

BiPoly BiPoly::fromUni(const UniPoly& p, Var in) {
  BiPoly r;
  const auto& c = p.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    const int k = static_cast<int>(i);
    r.add(in == Var::V ? Monomial{k, 0} : Monomial{0, k}, c[i]);
  }
  return r;
}

void BiPoly::add(const Monomial& m, const Rat& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

Rat BiPoly::coeff(int vPow, int xPow) const {
  const auto it = terms_.find(Monomial{vPow, xPow});
  return it == terms_.end() ? Rat(0) : it->second;
}

std::optional<int> BiPoly::totalDegree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total());
  return d;
}

std::optional<int> BiPoly::degreeIn(Var which) const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, which == Var::V ? m.v : m.x);
  return d;
}

bool BiPoly::isFreeOf(Var which) const {
  const auto d = degreeIn(which);
  return !d || *d == 0;
}

UniPoly BiPoly::coeffInV(int k) const {
  std::vector<Rat> c;
  for (const auto& [m, a] : terms_) {
    if (m.v != k) continue;
    if (c.size() <= static_cast<size_t>(m.x)) c.resize(static_cast<size_t>(m.x) + 1);
    c[static_cast<size_t>(m.x)] = a;
  }
  return UniPoly(std::move(c));
}

UniPoly BiPoly::coeffInX(int k) const {
  std::vector<Rat> c;
  for (const auto& [m, a] : terms_) {
    if (m.x != k) continue;
    if (c.size() <= static_cast<size_t>(m.v)) c.resize(static_cast<size_t>(m.v) + 1);
    c[static_cast<size_t>(m.v)] = a;
  }
  return UniPoly(std::move(c));
}

UniPoly BiPoly::toUni(Var in) const {
  const Var other = in == Var::V ? Var::X : Var::V;
  if (!isFreeOf(other)) throw Error(ErrorCode::PreconditionViolated, "polynomial is not univariate: " + toString());
  return in == Var::V ? coeffInX(0) : coeffInV(0);
}

BiPoly BiPoly::homogeneousPart(int degree) const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.total() == degree) r.terms_.emplace(m, c);
  return r;
}

BiPoly BiPoly::nonlinearPart() const {
  BiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.total() >= 2) r.terms_.emplace(m, c);
  return r;
}

BiPoly BiPoly::diff(Var which) const {
  BiPoly r;
  for (const auto& [m, c] : terms_) {
    if (which == Var::V && m.v > 0) r.add(Monomial{m.v - 1, m.x}, c * Rat(m.v));
    if (which == Var::X && m.x > 0) r.add(Monomial{m.v, m.x - 1}, c * Rat(m.x));
  }
  return r;
}

Rat BiPoly::eval(const Rat& v, const Rat& x) const {
  Rat acc;
  for (const auto& [m, c] : terms_) acc += c * v.pow(m.v) * x.pow(m.x);
  return acc;
}

double BiPoly::eval(double v, double x) const {
  double acc = 0.0;
  for (const auto& [m, c] : terms_) acc += c.toDouble() * std::pow(v, m.v) * std::pow(x, m.x);
  return acc;
}

BiPoly BiPoly::substitute(const BiPoly& forV, const BiPoly& forX) const {
  if (terms_.empty()) return {};
  const int dv = *degreeIn(Var::V);
  const int dx = *degreeIn(Var::X);
  std::vector<BiPoly> pv{BiPoly(1)}, px{BiPoly(1)};
  for (int i = 1; i <= dv; ++i) pv.push_back(pv.back() * forV);
  for (int i = 1; i <= dx; ++i) px.push_back(px.back() * forX);
  BiPoly r;
  for (const auto& [m, c] : terms_)
    r += (pv[static_cast<size_t>(m.v)] * px[static_cast<size_t>(m.x)]).scaled(c);
  return r;
}

UniPoly BiPoly::restrict(Var fixed, const Rat& value) const {
  std::vector<Rat> c;
  for (const auto& [m, a] : terms_) {
    const int keep = fixed == Var::V ? m.x : m.v;
    const int gone = fixed == Var::V ? m.v : m.x;
    if (c.size() <= static_cast<size_t>(keep)) c.resize(static_cast<size_t>(keep) + 1);
    c[static_cast<size_t>(keep)] += a * value.pow(gone);
  }
  return UniPoly(std::move(c));
}

BiPoly BiPoly::scaled(const Rat& s) const {
  if (s.isZero()) return {};
  BiPoly r = *this;
  for (auto& [m, c] : r.terms_) c *= s;
  return r;
}

BiPoly BiPoly::pow(int e) const {
  if (e < 0) throw Error(ErrorCode::PreconditionViolated, "negative polynomial power");
  BiPoly r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  BiPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add(Monomial{ma.v + mb.v, ma.x + mb.x}, ca * cb);
  terms_ = std::move(r.terms_);
  return *this;
}

std::string BiPoly::toString(const VarNames& names) const {
  // descending total degree, then descending power of the first variable
  std::vector<std::pair<Monomial, Rat>> order(terms_.begin(), terms_.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first.total() != b.first.total()) return a.first.total() > b.first.total();
    return a.first.v > b.first.v;
  });
  std::string out;
  for (const auto& [m, c] : order) {
    std::string mono;
    auto put = [&mono](const std::string& name, int p) {
      if (p == 0) return;
      mono += name;
      if (p > 1) mono += "^" + std::to_string(p);
    };
    put(names[0], m.v);
    put(names[1], m.x);
    detail::appendTerm(out, c, mono);
  }
  return out.empty() ? "0" : out;
}

DivisionResult divide(const BiPoly& a, const BiPoly& f) {
  if (f.isZero()) throw Error(ErrorCode::PreconditionViolated, "division by the zero polynomial");
  // lex order v > x: std::map orders Monomial by (v, x) ascending, so the leading term is the last one
  const auto [lf, cf] = *f.terms().rbegin();
  BiPoly p = a, q, r;
  while (!p.isZero()) {
    const auto [lp, cp] = *p.terms().rbegin();
    if (lp.v >= lf.v && lp.x >= lf.x) {
      const BiPoly t = BiPoly::term(cp / cf, lp.v - lf.v, lp.x - lf.x);
      q += t;
      p -= t * f;
    } else {
      const BiPoly t = BiPoly::term(cp, lp.v, lp.x);
      r += t;
      p -= t;
    }
  }
  return {q, r};
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, const VarNames& names) : s_(s), names_(names) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  BiPoly expr() {
    BiPoly r;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      r = term();
      if (c == '-') r = -r;
    } else {
      r = term();
    }
    for (c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      BiPoly t = term();
      r = c == '+' ? r + t : r - t;
    }
    return r;
  }

  bool startsFactor(char c) const {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.' || std::isalpha(static_cast<unsigned char>(c));
  }

  BiPoly term() {
    BiPoly r = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        r *= power();
      } else if (c == '/') {
        ++pos_;
        const BiPoly d = power();
        if (!d.isFreeOf(Var::V) || !d.isFreeOf(Var::X) || d.isZero()) fail("division by a non-constant or zero");
        r = r.scaled(Rat(1) / d.coeff(0, 0));
      } else if (startsFactor(c)) {
        r *= power();
      } else {
        return r;
      }
    }
  }

  BiPoly power() {
    BiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  BiPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      BiPoly r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return BiPoly(Rat::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string name(1, c);
      ++pos_;
      if (name == names_[0]) return BiPoly::v();
      if (name == names_[1]) return BiPoly::x();
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected end of input");
  }

  std::string_view s_;
  const VarNames& names_;
  size_t pos_ = 0;
};

}  // namespace

BiPoly parseBiPoly(std::string_view text, const VarNames& names) { return Parser(text, names).parse(); }

}  // namespace opf
