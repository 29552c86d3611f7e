#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace opf {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(int n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p", "p/q", "-p/q" and terminating decimals such as "0.25" or "-1.5e-2".
  static Rat parse(std::string_view text);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool isZero() const { return sign() == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  double toDouble() const { return q_.get_d(); }

  /// "p" when the denominator is 1, "p/q" otherwise.
  std::string toString() const;

  Rat abs() const { return Rat(::abs(q_)); }
  Rat pow(int e) const;
  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rat> sqrtExact() const;

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.toString(); }

 private:
  mpq_class q_;
};

}  // namespace opf
