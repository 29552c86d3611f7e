#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "opf/classify.hpp"
#include "opf/compactify.hpp"
#include "opf/ode.hpp"
#include "opf/vfield.hpp"

namespace opf::portrait {

struct Window {
  double vmin = -3, vmax = 3, xmin = -3, xmax = 3;
};

struct PortraitSpec {
  bool disk = false;
  std::optional<Window> window;  // plane mode; fitted to the finite points when empty
  int gridSize = 5;              // grid seeds per side, 0 disables
  bool separatrixSeeds = true;
  bool invariantLineSeeds = true;
  std::vector<std::array<double, 2>> userSeeds;
  double tol = 1e-8;
  double horizon = 8;  // in rescaled time, each direction
  int samples = 400;   // per trajectory and direction
  int maxTrajectories = 400;

  /// Throws PreconditionViolated outside tol in [1e-12, 1e-3], maxTrajectories in [0, 1e4].
  void validate() const;
};

enum class SeedKind { Separatrix, InvariantLine, User, Grid };
std::string_view seedKindName(SeedKind k);

struct Seed {
  double v, x;
  int direction;  // +1 forward, -1 backward
  SeedKind kind;
};

/// s is the rescaled time used for drawing, t the physical time of the field.
struct Sample {
  double s, t, v, x;
};

struct Trajectory {
  Seed seed;
  std::vector<Sample> samples;
  ode::StopReason reason = ode::StopReason::Completed;
};

/// Central projection onto the open unit disk.
std::array<double, 2> diskMap(double v, double x);
std::array<double, 2> diskUnmap(double u1, double u2);

/// Lines v = c or x = c made of critical points or orbits, found exactly.
struct InvariantLine {
  Var axis;  // Var::X for x = c
  double c;
};
std::vector<InvariantLine> axisInvariantLines(const vfield::QuadSystem& sys);

Window fitWindow(const std::vector<classify::CritReport>& finite);

/// Deterministic seed list (separatrices, invariant lines, user, grid), truncated
/// to spec.maxTrajectories.
std::vector<Seed> makeSeeds(const vfield::QuadSystem& sys, const PortraitSpec& spec, const Window& w,
                            const std::vector<classify::CritReport>& finite);

/// One trajectory in rescaled time; the step is capped near invariant lines and
/// the run stops (nearSingularity) once it is within 1e-7 of one it did not start on.
Trajectory trace(const ode::CompiledField& f, const Seed& seed, const PortraitSpec& spec, const Window& w,
                 const std::vector<InvariantLine>& lines);

/// All seeds, OpenMP-parallel; results are ordered by seed index.
std::vector<Trajectory> traceAll(const vfield::QuadSystem& sys, const std::vector<Seed>& seeds,
                                 const PortraitSpec& spec, const Window& w);
/// Serial reference for traceAll.
std::vector<Trajectory> traceAllSerial(const vfield::QuadSystem& sys, const std::vector<Seed>& seeds,
                                       const PortraitSpec& spec, const Window& w);

struct Portrait {
  Window window;
  std::vector<Trajectory> trajectories;
  int finiteGlyphs = 0;
  int boundaryGlyphs = 0;
  std::string svg;
  std::string csv;  // trajectory_id,t,v,x
};

Portrait renderPortrait(const vfield::QuadSystem& sys, const PortraitSpec& spec,
                        const std::vector<classify::CritReport>& finite,
                        const std::vector<compactify::InfinityReport>& infinity);

}  // namespace opf::portrait
