#include "opf/compactify.hpp"

#include <cmath>

#include "opf/error.hpp"
#include "opf/roots.hpp"

namespace opf::compactify {

using classify::Chart;
using classify::Coord;
using classify::CritPoint;
using vfield::QuadSystem;

BiPoly infinityEquation(const QuadSystem& sys) {
  const int m = sys.degree();
  const BiPoly H = BiPoly::v() * sys.Q.homogeneousPart(m) - BiPoly::x() * sys.P.homogeneousPart(m);
  if (H.isZero()) throw Error(ErrorCode::IdenticallyZero, "the equator consists of critical points");
  return H;
}

namespace {

// z^m F(u/z, 1/z) for U1 (lead = X) or z^m F(1/z, u/z) for U2 (lead = V),
// times u^uPow z^zPow.
BiPoly cleared(const BiPoly& F, int m, Var lead, int uPow, int zPow) {
  BiPoly out;
  for (const auto& [mono, c] : F.terms()) {
    const int u = lead == Var::X ? mono.v : mono.x;
    out += BiPoly::term(c, u + uPow, m - mono.v - mono.x + zPow);
  }
  return out;
}

ChartSystem chart(const QuadSystem& sys, Chart which) {
  const int m = sys.degree();
  // in U1 the leading coordinate is x, in U2 it is v
  const bool u1 = which == Chart::U1;
  const BiPoly& lead = u1 ? sys.Q : sys.P;
  const BiPoly& other = u1 ? sys.P : sys.Q;
  const Var lv = u1 ? Var::X : Var::V;
  ChartSystem c;
  c.chart = which;
  c.m = m;
  c.sys.P = cleared(other, m, lv, 0, 0) - cleared(lead, m, lv, 1, 0);
  c.sys.Q = -cleared(lead, m, lv, 0, 1);
  c.sys.names = {u1 ? sys.names[0] : sys.names[1], "z"};
  c.sys.provenance = sys.provenance;
  c.sys.provenance.source = u1 ? "chart-U1" : "chart-U2";
  return c;
}

CritPoint chartPoint(const Coord& u, Chart ch) { return {u, Coord::of(Rat(0)), ch}; }

}  // namespace

ChartSystem chartU1(const QuadSystem& sys) { return chart(sys, Chart::U1); }
ChartSystem chartU2(const QuadSystem& sys) { return chart(sys, Chart::U2); }

ChartSystem antipodal(const ChartSystem& c) {
  ChartSystem out = c;
  out.chart = c.chart == Chart::U1 ? Chart::V1 : c.chart == Chart::U2 ? Chart::V2 : c.chart;
  if (c.m % 2 == 0) {
    out.sign = -c.sign;
    out.sys.P = -c.sys.P;
    out.sys.Q = -c.sys.Q;
  }
  out.sys.provenance.source = out.chart == Chart::V1 ? "chart-V1" : "chart-V2";
  return out;
}

std::vector<InfinityReport> infinityCritPoints(const QuadSystem& sys) {
  const BiPoly H = infinityEquation(sys);
  const ChartSystem u1 = chartU1(sys), u2 = chartU2(sys);
  const bool flip = u1.m % 2 == 0;

  std::vector<InfinityReport> out;
  auto add = [&](const ChartSystem& ch, const Coord& u, std::array<double, 2> dir) {
    InfinityReport r;
    const double norm = std::hypot(dir[0], dir[1]);
    r.direction = {dir[0] / norm, dir[1] / norm};
    r.point = chartPoint(u, ch.chart);
    r.cls = classify::classifyPoint(ch.sys, r.point);
    r.antipode = chartPoint(u, ch.chart == Chart::U1 ? Chart::V1 : Chart::V2);
    r.antipodeCls = flip ? classify::reversed(r.cls) : r.cls;
    out.push_back(std::move(r));
  };

  const UniPoly h1 = H.restrict(Var::X, Rat(1));
  if (!h1.isConstant())
    for (const auto& root : realRoots(h1)) {
      const Coord u = root.exact ? Coord::of(*root.exact) : Coord::of(root.value);
      add(u1, u, {u.value, 1.0});
    }
  if (H.eval(Rat(1), Rat(0)).isZero()) add(u2, Coord::of(Rat(0)), {1.0, 0.0});
  return out;
}

}  // namespace opf::compactify
