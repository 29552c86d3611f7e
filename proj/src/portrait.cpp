#include "opf/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "opf/error.hpp"
#include "opf/roots.hpp"

namespace opf::portrait {

using classify::Kind;
using classify::Stability;

namespace {

constexpr double kCanvas = 800, kMargin = 20;
constexpr double kLineStop = 1e-7;
constexpr double kSeparatrixOffset = 1e-4;

std::string fmt(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", d);
  return buf;
}

std::string num17(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

UniPoly contentIn(const BiPoly& p, Var other) {
  UniPoly g;
  const int d = p.degreeIn(other).value_or(0);
  for (int k = 0; k <= d; ++k) g = gcd(g, other == Var::V ? p.coeffInV(k) : p.coeffInX(k));
  return g;
}

bool inside(const Window& w, double v, double x) { return v >= w.vmin && v <= w.vmax && x >= w.xmin && x <= w.xmax; }

double lineDistance(const InvariantLine& l, double v, double x) { return std::abs((l.axis == Var::X ? x : v) - l.c); }

}  // namespace

void PortraitSpec::validate() const {
  if (!(tol >= 1e-12 && tol <= 1e-3)) throw Error(ErrorCode::PreconditionViolated, "tolerance must lie in [1e-12, 1e-3]");
  if (maxTrajectories < 0 || maxTrajectories > 10000)
    throw Error(ErrorCode::PreconditionViolated, "max trajectories must lie in [0, 10000]");
  if (horizon <= 0 || samples < 1) throw Error(ErrorCode::PreconditionViolated, "horizon and samples must be positive");
  if (window && (window->vmin >= window->vmax || window->xmin >= window->xmax))
    throw Error(ErrorCode::PreconditionViolated, "empty window");
}

std::string_view seedKindName(SeedKind k) {
  switch (k) {
    case SeedKind::Separatrix: return "separatrix";
    case SeedKind::InvariantLine: return "invariant-line";
    case SeedKind::User: return "user";
    case SeedKind::Grid: return "grid";
  }
  return "?";
}

std::array<double, 2> diskMap(double v, double x) {
  const double d = 1 + std::sqrt(1 + v * v + x * x);
  return {v / d, x / d};
}

std::array<double, 2> diskUnmap(double u1, double u2) {
  const double s2 = u1 * u1 + u2 * u2;
  const double k = 2 / (1 - s2);
  return {k * u1, k * u2};
}

std::vector<InvariantLine> axisInvariantLines(const vfield::QuadSystem& sys) {
  std::vector<InvariantLine> out;
  auto collect = [&out](const BiPoly& comp, Var other, Var axis) {
    if (comp.isZero()) return;
    const UniPoly g = contentIn(comp, other);
    if (g.isConstant()) return;
    for (const auto& r : realRoots(g)) out.push_back({axis, r.value});
  };
  collect(sys.Q, Var::V, Var::X);
  collect(sys.P, Var::X, Var::V);
  return out;
}

Window fitWindow(const std::vector<classify::CritReport>& finite) {
  double r = 3;
  for (const auto& c : finite) r = std::max(r, 1.5 * std::max(std::abs(c.point.v.value), std::abs(c.point.x.value)));
  r = std::ceil(r);
  return {-r, r, -r, r};
}

std::vector<Seed> makeSeeds(const vfield::QuadSystem& sys, const PortraitSpec& spec, const Window& w,
                            const std::vector<classify::CritReport>& finite) {
  std::vector<Seed> seeds;
  auto both = [&seeds](double v, double x, SeedKind k) {
    seeds.push_back({v, x, +1, k});
    seeds.push_back({v, x, -1, k});
  };
  auto nearCritical = [&finite](double v, double x) {
    for (const auto& c : finite)
      if (std::hypot(v - c.point.v.value, x - c.point.x.value) < 1e-9) return true;
    return false;
  };

  if (spec.separatrixSeeds)
    for (const auto& c : finite) {
      if (c.cls.kind != Kind::Saddle) continue;
      const double pv = c.point.v.value, px = c.point.x.value;
      const auto J = vfield::jacobian(sys, pv, px);
      const double tr = J[0][0] + J[1][1], det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      const double root = std::sqrt(std::max(0.0, tr * tr - 4 * det));
      for (double l : {(tr - root) / 2, (tr + root) / 2}) {
        std::array<double, 2> e{J[0][1], l - J[0][0]};
        if (std::hypot(e[0], e[1]) < 1e-14) e = {l - J[1][1], J[1][0]};
        const double n = std::hypot(e[0], e[1]);
        if (n < 1e-14) continue;
        for (double sg : {1.0, -1.0})
          both(pv + sg * kSeparatrixOffset * e[0] / n, px + sg * kSeparatrixOffset * e[1] / n, SeedKind::Separatrix);
      }
    }

  if (spec.invariantLineSeeds)
    for (const auto& l : axisInvariantLines(sys)) {
      const bool horiz = l.axis == Var::X;
      const double lo = horiz ? w.vmin : w.xmin, hi = horiz ? w.vmax : w.xmax;
      for (int k = 1; k <= 4; ++k) {
        const double s = lo + (hi - lo) * (k - 0.5) / 4;
        const double v = horiz ? s : l.c, x = horiz ? l.c : s;
        if (!nearCritical(v, x)) both(v, x, SeedKind::InvariantLine);
      }
    }

  for (const auto& u : spec.userSeeds) both(u[0], u[1], SeedKind::User);

  for (int i = 0; i < spec.gridSize; ++i)
    for (int j = 0; j < spec.gridSize; ++j) {
      const double a = (i + 0.5) / spec.gridSize, b = (j + 0.5) / spec.gridSize;
      double v, x;
      if (spec.disk) {
        const auto p = diskUnmap(0.9 * (2 * a - 1), 0.9 * (2 * b - 1));
        if (!std::isfinite(p[0]) || std::hypot(0.9 * (2 * a - 1), 0.9 * (2 * b - 1)) >= 0.95) continue;
        v = p[0];
        x = p[1];
      } else {
        v = w.vmin + a * (w.vmax - w.vmin);
        x = w.xmin + b * (w.xmax - w.xmin);
      }
      if (!nearCritical(v, x)) both(v, x, SeedKind::Grid);
    }

  if (static_cast<int>(seeds.size()) > spec.maxTrajectories) seeds.resize(spec.maxTrajectories);
  return seeds;
}

Trajectory trace(const ode::CompiledField& f, const Seed& seed, const PortraitSpec& spec,
                 const Window& w, const std::vector<InvariantLine>& lines) {
  std::vector<InvariantLine> others;
  for (const auto& l : lines)
    if (lineDistance(l, seed.v, seed.x) > 0) others.push_back(l);

  const bool disk = spec.disk;
  auto gain = [&f, disk](double v, double x, double& P, double& Q) {
    P = f.P(v, x);
    Q = f.Q(v, x);
    double g = 1 / (1 + std::hypot(P, Q));
    if (disk) g *= 1 + v * v + x * x;
    return g;
  };
  const ode::Rhs rhs = [&gain](const ode::State& y, ode::State& dy) {
    double P, Q;
    const double g = gain(y[0], y[1], P, Q);
    dy = {g * P, g * Q, g};
  };

  const double hw = 0.5 * (w.vmax - w.vmin), hx = 0.5 * (w.xmax - w.xmin);
  const Window outer{w.vmin - hw, w.vmax + hw, w.xmin - hx, w.xmax + hx};
  const ode::Guard guard = [&](double, const ode::State& y) -> std::optional<ode::StopReason> {
    if (disk ? std::hypot(y[0], y[1]) > 1e8 : !inside(outer, y[0], y[1])) return ode::StopReason::LeftWindow;
    for (const auto& l : others)
      if (lineDistance(l, y[0], y[1]) < kLineStop) return ode::StopReason::NearSingularity;
    return std::nullopt;
  };

  ode::DriveOptions opt;
  opt.tol = spec.tol;
  opt.hInit = 1e-3;
  opt.maxSteps = 200000;
  if (!others.empty())
    opt.maxStep = [&](const ode::State& y) {
      double cap = 1e300;
      double P, Q;
      const double g = gain(y[0], y[1], P, Q);
      for (const auto& l : others) {
        const double d = lineDistance(l, y[0], y[1]);
        if (d > 0.05) continue;
        // displacement towards the line per step at most 1e-3 of the distance
        const double normal = std::abs(g * (l.axis == Var::X ? Q : P));
        if (normal > 0) cap = std::min(cap, 1e-3 * d / normal);
      }
      return cap;
    };

  const double end = seed.direction * spec.horizon;
  std::vector<double> grid(spec.samples + 1);
  for (int k = 0; k <= spec.samples; ++k) grid[k] = end * k / spec.samples;
  grid.back() = end;

  Trajectory tr;
  tr.seed = seed;
  ode::State y{seed.v, seed.x, 0.0};
  double s = 0;
  tr.reason = ode::drive(
      rhs, y, s, end, grid, [&tr](double si, const ode::State& a) { tr.samples.push_back({si, a[2], a[0], a[1]}); },
      guard, opt);
  if (tr.reason != ode::StopReason::Completed && (tr.samples.empty() || tr.samples.back().s != s))
    tr.samples.push_back({s, y[2], y[0], y[1]});
  return tr;
}

std::vector<Trajectory> traceAll(const vfield::QuadSystem& sys, const std::vector<Seed>& seeds,
                                 const PortraitSpec& spec, const Window& w) {
  const ode::CompiledField f(sys);
  const auto lines = axisInvariantLines(sys);
  std::vector<Trajectory> out(seeds.size());
  const long n = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = trace(f, seeds[i], spec, w, lines);
  return out;
}

std::vector<Trajectory> traceAllSerial(const vfield::QuadSystem& sys, const std::vector<Seed>& seeds,
                                       const PortraitSpec& spec, const Window& w) {
  const ode::CompiledField f(sys);
  const auto lines = axisInvariantLines(sys);
  std::vector<Trajectory> out;
  out.reserve(seeds.size());
  for (const auto& s : seeds) out.push_back(trace(f, s, spec, w, lines));
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Canvas {
  bool disk;
  Window w;
  std::array<double, 2> operator()(double v, double x) const {
    const double span = kCanvas - 2 * kMargin;
    if (disk) {
      const auto q = diskMap(v, x);
      return {kCanvas / 2 + span / 2 * q[0], kCanvas / 2 - span / 2 * q[1]};
    }
    return {kMargin + (v - w.vmin) / (w.vmax - w.vmin) * span, kCanvas - kMargin - (x - w.xmin) / (w.xmax - w.xmin) * span};
  }
  std::array<double, 2> boundary(double dv, double dx) const {
    const double r = (kCanvas - 2 * kMargin) / 2;
    return {kCanvas / 2 + r * dv, kCanvas / 2 - r * dx};
  }
};

std::string shapeFor(const classify::Classification& c) {
  const bool stable = c.kind == Kind::NodeStable || c.kind == Kind::FocusStable || c.stability == Stability::Stable;
  const std::string fill = stable ? "#000" : "#fff";
  switch (c.kind) {
    case Kind::Saddle: return R"(<path d="M-5,-5L5,5M-5,5L5,-5" stroke="#000" stroke-width="2"/>)";
    case Kind::NodeStable:
    case Kind::NodeUnstable: return R"(<circle r="5" stroke="#000" fill=")" + fill + R"("/>)";
    case Kind::FocusStable:
    case Kind::FocusUnstable:
      return R"(<circle r="5" stroke="#000" fill=")" + fill + R"("/><circle r="2" fill="#888"/>)";
    case Kind::CenterOrWeakFocus: return R"(<circle r="5" stroke="#000" fill="none" stroke-dasharray="2,2"/>)";
    case Kind::SaddleNode: return R"(<circle r="5" stroke="#000" fill="#fff"/><path d="M0,-5A5,5 0 0 1 0,5Z" fill="#000"/>)";
    case Kind::TopologicalSaddle:
      return R"(<rect x="-5" y="-5" width="10" height="10" stroke="#000" fill="#fff"/><path d="M-4,-4L4,4M-4,4L4,-4" stroke="#000"/>)";
    case Kind::TopologicalNode:
    case Kind::NilpotentNode: return R"(<path d="M0,-6L6,0L0,6L-6,0Z" stroke="#000" fill=")" + fill + R"("/>)";
    case Kind::Cusp: return R"(<path d="M0,-6L5,4L-5,4Z" stroke="#000" fill="#fff"/>)";
    case Kind::EllipticHyperbolicSector: return R"(<ellipse rx="7" ry="4" stroke="#000" fill="#fff"/>)";
    case Kind::Degenerate: return R"(<rect x="-5" y="-5" width="10" height="10" stroke="#000" fill="#ccc"/>)";
  }
  return "";
}

std::string glyph(const std::array<double, 2>& at, const classify::Classification& c, std::string_view chart) {
  return "<g class=\"glyph\" data-kind=\"" + std::string(classify::kindName(c.kind)) + "\" data-chart=\"" +
         std::string(chart) + "\" transform=\"translate(" + fmt(at[0]) + "," + fmt(at[1]) + ")\">" + shapeFor(c) +
         "</g>\n";
}

const char* colorOf(SeedKind k) {
  switch (k) {
    case SeedKind::Separatrix: return "#c0392b";
    case SeedKind::InvariantLine: return "#2c7fb8";
    case SeedKind::User: return "#6a3d9a";
    case SeedKind::Grid: return "#777";
  }
  return "#000";
}

}  // namespace

Portrait renderPortrait(const vfield::QuadSystem& sys, const PortraitSpec& spec,
                        const std::vector<classify::CritReport>& finite,
                        const std::vector<compactify::InfinityReport>& infinity) {
  spec.validate();
  Portrait out;
  out.window = spec.window ? *spec.window : fitWindow(finite);
  const Window& w = out.window;
  const Canvas cv{spec.disk, w};

  out.trajectories = traceAll(sys, makeSeeds(sys, spec, w, finite), spec, w);

  std::string svg;
  svg += R"(<?xml version="1.0" encoding="UTF-8"?>)" "\n";
  svg += R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="0 0 800 800">)" "\n";
  svg += R"(<rect width="800" height="800" fill="#fff"/>)" "\n";
  if (spec.disk)
    svg += R"(<circle class="boundary" cx="400" cy="400" r="380" fill="none" stroke="#000" stroke-width="1.5"/>)" "\n";
  else
    svg += R"(<rect class="frame" x="20" y="20" width="760" height="760" fill="none" stroke="#000"/>)" "\n";

  for (const auto& l : axisInvariantLines(sys)) {
    std::string pts;
    const int steps = spec.disk ? 400 : 1;
    for (int k = 0; k <= steps; ++k) {
      double s;
      if (spec.disk) {
        s = std::tan(-1.5707 + 3.1414 * k / steps);
      } else {
        s = k == 0 ? (l.axis == Var::X ? w.vmin : w.xmin) : (l.axis == Var::X ? w.vmax : w.xmax);
      }
      const auto p = l.axis == Var::X ? cv(s, l.c) : cv(l.c, s);
      if (!spec.disk && !(l.axis == Var::X ? (l.c >= w.xmin && l.c <= w.xmax) : (l.c >= w.vmin && l.c <= w.vmax)))
        break;
      pts += fmt(p[0]) + "," + fmt(p[1]) + " ";
    }
    if (!pts.empty())
      svg += R"(<polyline class="invariant-line" fill="none" stroke="#2c7fb8" stroke-width="2.5" stroke-opacity="0.5" points=")" +
             pts + "\"/>\n";
  }

  std::string csv = "trajectory_id,t,v,x\n";
  for (std::size_t id = 0; id < out.trajectories.size(); ++id) {
    const auto& tr = out.trajectories[id];
    std::vector<std::string> runs(1);
    for (const auto& s : tr.samples) {
      csv += std::to_string(id) + "," + num17(s.t) + "," + num17(s.v) + "," + num17(s.x) + "\n";
      if (!spec.disk && !inside(w, s.v, s.x)) {
        if (!runs.back().empty()) runs.emplace_back();
        continue;
      }
      const auto p = cv(s.v, s.x);
      runs.back() += fmt(p[0]) + "," + fmt(p[1]) + " ";
    }
    for (const auto& r : runs)
      if (std::count(r.begin(), r.end(), ' ') >= 2)
        svg += R"(<polyline class="traj" data-id=")" + std::to_string(id) + R"(" fill="none" stroke=")" +
               colorOf(tr.seed.kind) + R"(" stroke-width="1" points=")" + r + "\"/>\n";
  }

  for (const auto& c : finite) {
    if (!spec.disk && !inside(w, c.point.v.value, c.point.x.value)) continue;
    svg += glyph(cv(c.point.v.value, c.point.x.value), c.cls, "finite");
    ++out.finiteGlyphs;
  }
  if (spec.disk)
    for (const auto& r : infinity) {
      svg += glyph(cv.boundary(r.direction[0], r.direction[1]), r.cls, classify::chartName(r.point.chart));
      svg += glyph(cv.boundary(-r.direction[0], -r.direction[1]), r.antipodeCls, classify::chartName(r.antipode.chart));
      out.boundaryGlyphs += 2;
    }
  svg += "</svg>\n";
  out.svg = std::move(svg);
  out.csv = std::move(csv);
  return out;
}

}  // namespace opf::portrait
