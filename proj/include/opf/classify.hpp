#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opf/rat.hpp"
#include "opf/series.hpp"
#include "opf/vfield.hpp"

namespace opf::classify {

/// A coordinate known as a double and, when rational, exactly.
struct Coord {
  double value = 0;
  std::optional<Rat> exact;

  static Coord of(const Rat& r) { return {r.toDouble(), r}; }
  static Coord of(double d) { return {d, std::nullopt}; }
  std::string toString() const;
};

enum class Chart { Finite, U1, U2, V1, V2 };
std::string_view chartName(Chart c);

struct CritPoint {
  Coord v, x;  // chart coordinates; in U1/U2 these are (u, z)
  Chart chart = Chart::Finite;
  bool exact() const { return v.exact && x.exact; }
};

enum class Kind {
  Saddle,
  NodeStable,
  NodeUnstable,
  FocusStable,
  FocusUnstable,
  CenterOrWeakFocus,
  SaddleNode,
  TopologicalSaddle,
  TopologicalNode,
  Cusp,
  EllipticHyperbolicSector,
  NilpotentNode,
  Degenerate,
};
std::string_view kindName(Kind k);

enum class Stability { None, Stable, Unstable };
std::string_view stabilityName(Stability s);

struct EigenEvidence {
  std::complex<double> l1, l2;
  bool exactSigns = false;  // decided from exact det/trace/discriminant
};

/// g(t) = a_m t^m + o(t^m) along the center manifold.
struct SemiEvidence {
  int m = 0;
  Rat am;
  Rat lambda;
  int order = 0;
};

/// F(t) = a t^m + o, G(t) = b t^n + o; missing entries vanish through `order`.
struct NilpotentEvidence {
  std::optional<int> m;
  std::optional<Rat> a;
  std::optional<int> n;
  std::optional<Rat> b;
  int order = 0;
};

using Evidence = std::variant<std::monostate, EigenEvidence, SemiEvidence, NilpotentEvidence>;

struct Classification {
  Kind kind = Kind::Degenerate;
  Stability stability = Stability::None;  // only for TopologicalNode and NilpotentNode
  Evidence evidence;
  std::string note;
};

/// Same point seen with time reversed: stable and unstable swap.
Classification reversed(Classification c);

/// All real solutions of P = Q = 0. Throws NonIsolatedCritSet when P and Q share
/// a nonconstant factor.
std::vector<CritPoint> findFiniteCritPoints(const vfield::QuadSystem& sys);

/// Eigenvalue rules; throws NotApplicable when an eigenvalue is zero.
Classification classifyHyperbolic(std::complex<double> l1, std::complex<double> l2);

/// Same rules decided from the exact signs of det, trace and discriminant.
Classification classifyLinearExact(const std::array<std::array<Rat, 2>, 2>& J);

/// Exact record of (v, x) = p + M (c, h).
struct Transform {
  Rat pv, px;
  std::array<std::array<Rat, 2>, 2> M{{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
};

enum class LinearType { Hyperbolic, SemiHyperbolic, Nilpotent, Zero };

struct LocalSystem {
  vfield::QuadSystem sys;
  Transform transform;
  LinearType type = LinearType::Hyperbolic;
  std::array<std::array<Rat, 2>, 2> linear;  // Jacobian at the point, original coordinates
};

/// Translates an exact critical point to the origin and, for semi-hyperbolic and
/// nilpotent linear parts, changes basis so that the linear part is diag(0, lambda)
/// resp. [[0, 1], [0, 0]]. Throws NotACriticalPoint.
LocalSystem normalizeAtPoint(const vfield::QuadSystem& sys, const CritPoint& pt);

/// Rules for c' = A, h' = lambda h + B along the center manifold h = f(c).
Classification kindFromSemi(const SemiEvidence& e);
/// Local system with linear part diag(0, lambda). Throws SeriesInconclusive.
Classification classifySemiHyperbolic(const vfield::QuadSystem& local, const Rat& lambda, int order);

/// Rules for c' = h + A, h' = B. Throws RuleUndecided when F and G both vanish
/// through the order, SeriesInconclusive when only F does.
Classification kindFromNilpotent(const NilpotentEvidence& e);
Classification classifyNilpotent(const vfield::QuadSystem& local, int order);

/// Full pipeline for one point: exact routing when the point is rational, float
/// eigenvalues otherwise. Series orders grow from defaultSeriesOrder() up to
/// kMaxSeriesOrder; undecidable cases come back as Degenerate with a note.
Classification classifyPoint(const vfield::QuadSystem& sys, const CritPoint& pt);

struct CritReport {
  CritPoint point;
  Classification cls;
};

std::vector<CritReport> classifyFinite(const vfield::QuadSystem& sys);

}  // namespace opf::classify
