#pragma once

#include <array>
#include <vector>

#include "opf/bipoly.hpp"
#include "opf/classify.hpp"
#include "opf/vfield.hpp"

namespace opf::compactify {

/// Polynomial field in chart coordinates (u, z), with u in the V slot and z in
/// the X slot. z = 0 is the equator.
struct ChartSystem {
  classify::Chart chart = classify::Chart::U1;
  vfield::QuadSystem sys;
  int m = 0;     // degree of the original field
  int sign = 1;  // factor applied to the + chart field; (-1)^(m-1) on V1/V2
};

/// v Q_m - x P_m, the equator polynomial. Throws IdenticallyZero when every
/// direction at infinity is critical.
BiPoly infinityEquation(const vfield::QuadSystem& sys);

/// U1: x = 1/z, v = u/z.   U2: v = 1/z, x = u/z.   Both multiplied by z^(m-1).
ChartSystem chartU1(const vfield::QuadSystem& sys);
ChartSystem chartU2(const vfield::QuadSystem& sys);
/// The antipodal chart (V1 from U1, V2 from U2).
ChartSystem antipodal(const ChartSystem& c);

/// One direction class at infinity. `point` lives in U1 (or at the U2 origin when
/// the direction is (1, 0)); `antipode` is the same chart point seen from V1/V2.
struct InfinityReport {
  std::array<double, 2> direction;  // unit (v, x)
  classify::CritPoint point;
  classify::Classification cls;
  classify::CritPoint antipode;
  classify::Classification antipodeCls;
};

std::vector<InfinityReport> infinityCritPoints(const vfield::QuadSystem& sys);

}  // namespace opf::compactify
