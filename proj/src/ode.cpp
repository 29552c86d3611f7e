#include "opf/ode.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace opf::ode {

namespace oi = boost::numeric::odeint;

CompiledPoly::CompiledPoly(const BiPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    terms_.push_back({c.toDouble(), m.v, m.x});
    maxV_ = std::max(maxV_, m.v);
    maxX_ = std::max(maxX_, m.x);
  }
}

double CompiledPoly::operator()(double v, double x) const {
  constexpr int kTable = 16;
  if (maxV_ >= kTable || maxX_ >= kTable) {
    double s = 0;
    for (const auto& t : terms_) s += t.c * std::pow(v, t.i) * std::pow(x, t.j);
    return s;
  }
  std::array<double, kTable> pv, px;
  pv[0] = px[0] = 1.0;
  for (int k = 1; k <= maxV_; ++k) pv[k] = pv[k - 1] * v;
  for (int k = 1; k <= maxX_; ++k) px[k] = px[k - 1] * x;
  double s = 0;
  for (const auto& t : terms_) s += t.c * pv[t.i] * px[t.j];
  return s;
}

std::string_view stopReasonName(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "horizonReached";
    case StopReason::NearSingularity: return "nearSingularity";
    case StopReason::LeftWindow: return "leftWindow";
    case StopReason::StepFailure: return "stepFailure";
  }
  return "unknown";
}

StopReason drive(const Rhs& rhs, State& y, double& s, double sEnd, const std::vector<double>& grid,
                 const GridHook& onGrid, const Guard& guard, const DriveOptions& opt) {
  const double dir = sEnd >= s ? 1.0 : -1.0;
  auto ctrl = oi::make_controlled<oi::runge_kutta_dopri5<State>>(opt.tol, opt.tol);
  auto sys = [&rhs](const State& a, State& da, double) { rhs(a, da); };

  std::size_t gi = 0;
  while (gi < grid.size() && (grid[gi] - s) * dir < 0) ++gi;
  if (gi < grid.size() && grid[gi] == s) {
    if (onGrid) onGrid(s, y);
    ++gi;
  }

  double h = dir * std::min(opt.hInit, std::abs(sEnd - s));
  for (long step = 0; (sEnd - s) * dir > 0; ++step) {
    if (step >= opt.maxSteps) return StopReason::StepFailure;
    const double target = gi < grid.size() ? grid[gi] : sEnd;
    double trial = h;
    if (opt.maxStep) trial = dir * std::min(std::abs(trial), std::max(opt.maxStep(y), opt.hMin));
    bool clipped = false;
    if ((s + trial - target) * dir >= 0) {
      trial = target - s;
      clipped = true;
    }
    const double before = s;
    double dt = trial;
    if (ctrl.try_step(sys, y, s, dt) == oi::fail) {
      h = dt;
      if (std::abs(h) < opt.hMin) return StopReason::StepFailure;
      continue;
    }
    if (!clipped || std::abs(dt) > std::abs(h)) h = dt;
    for (double c : y)
      if (!std::isfinite(c)) return StopReason::StepFailure;
    if (clipped && s != target && std::abs(s - target) <= 1e-12 * std::max(1.0, std::abs(target))) s = target;
    if (s == before) return StopReason::StepFailure;
    if (guard)
      if (auto r = guard(s, y)) return *r;
    if (gi < grid.size() && s == grid[gi]) {
      if (onGrid) onGrid(s, y);
      ++gi;
    }
  }
  return StopReason::Completed;
}

Trajectory integrate(const CompiledField& f, double v0, double x0, double T, const Options& opt) {
  Trajectory tr;
  const int n = std::max(1, opt.samples);
  std::vector<double> grid(n + 1);
  for (int k = 0; k <= n; ++k) grid[k] = T * k / n;
  grid[n] = T;

  State y{v0, x0, 0.0};
  double t = 0;
  const Rhs rhs = [&f](const State& a, State& da) {
    da[0] = f.P(a[0], a[1]);
    da[1] = f.Q(a[0], a[1]);
    da[2] = 0;
  };
  const Guard guard = [&opt](double, const State& a) -> std::optional<StopReason> {
    if (std::hypot(a[0], a[1]) > opt.blowup) return StopReason::LeftWindow;
    return std::nullopt;
  };
  DriveOptions dopt;
  dopt.tol = opt.tol;
  dopt.hInit = std::min(1e-3, std::abs(T) / n);
  tr.reason = drive(
      rhs, y, t, T, grid, [&tr](double s, const State& a) { tr.samples.push_back({s, a[0], a[1]}); }, guard, dopt);
  return tr;
}

}  // namespace opf::ode
