#pragma once

#include <optional>
#include <vector>

#include "opf/bipoly.hpp"
#include "opf/rat.hpp"

namespace opf {

inline constexpr int kDefaultSeriesOrder = 12;
inline constexpr int kMaxSeriesOrder = 24;

/// Series order from OPF_SERIES_ORDER, falling back to kDefaultSeriesOrder.
int defaultSeriesOrder();

/// Truncated power series c_0 + c_1 t + ... + c_N t^N over Q.
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(static_cast<size_t>(order) + 1) {}
  PowerSeries(std::vector<Rat> coeffs, int order);

  static PowerSeries variable(int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  Rat& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  bool isZero() const;

  /// First nonzero coefficient (index, value); nullopt when zero through the order.
  struct Leading {
    int power;
    Rat coeff;
  };
  std::optional<Leading> leading() const;

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries scaled(const Rat& s) const;

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  /// Product truncated at min(order(a), order(b)).
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<Rat> c_;
};

/// Leading term, throwing TruncationTooLow when the series vanishes through its order.
PowerSeries::Leading leadingTerm(const PowerSeries& s);

/// Substitutes the series for one variable of `outer` and the series variable t
/// for the other: intoVar == X gives outer(t, inner(t)), intoVar == V gives outer(inner(t), t).
PowerSeries composeSeries(const BiPoly& outer, const PowerSeries& inner, Var intoVar);

/// Solves lin*y + B(t, y) = 0 for y = f(t), f(0) = 0, by undetermined coefficients
/// through t^order. B may not contain constant or linear terms.
PowerSeries solveImplicitSeries(const Rat& lin, const BiPoly& B, int order);

}  // namespace opf
