#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "opf/bipoly.hpp"
#include "opf/vfield.hpp"

namespace opf::ode {

/// Double-precision image of a BiPoly, cheap to evaluate in inner loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const BiPoly& p);
  double operator()(double v, double x) const;

 private:
  struct Term {
    double c;
    int i, j;
  };
  std::vector<Term> terms_;
  int maxV_ = 0, maxX_ = 0;
};

struct CompiledField {
  CompiledPoly P, Q;
  CompiledField() = default;
  explicit CompiledField(const vfield::QuadSystem& sys) : P(sys.P), Q(sys.Q) {}
};

enum class StopReason { Completed, NearSingularity, LeftWindow, StepFailure };
std::string_view stopReasonName(StopReason r);

using State = std::array<double, 3>;
using Rhs = std::function<void(const State&, State&)>;
using Guard = std::function<std::optional<StopReason>(double, const State&)>;
using GridHook = std::function<void(double, const State&)>;

struct DriveOptions {
  double tol = 1e-10;  // used as both absolute and relative tolerance
  double hInit = 1e-3;
  double hMin = 1e-13;
  long maxSteps = 2'000'000;
  std::function<double(const State&)> maxStep;  // optional state-dependent cap on |h|
};

/// Adaptive Dormand-Prince 5(4) from s to sEnd (either direction). Steps are
/// clipped so that every point of `grid` (ordered in the direction of travel) is
/// hit exactly and reported through onGrid. The guard runs after every accepted
/// step and may stop the integration.
StopReason drive(const Rhs& rhs, State& y, double& s, double sEnd, const std::vector<double>& grid,
                 const GridHook& onGrid, const Guard& guard, const DriveOptions& opt = {});

struct Sample {
  double t, v, x;
};

struct Trajectory {
  std::vector<Sample> samples;
  StopReason reason = StopReason::Completed;
};

struct Options {
  double tol = 1e-10;
  int samples = 100;    // grid intervals on [0, T]
  double blowup = 1e8;  // states beyond this radius count as leaving the window
};

/// Integrates v' = P, x' = Q in physical time from t = 0 to T (T < 0 runs backwards).
Trajectory integrate(const CompiledField& f, double v0, double x0, double T, const Options& opt = {});

}  // namespace opf::ode
