#pragma once

#include <array>
#include <vector>

#include "opf/darboux.hpp"
#include "opf/families.hpp"
#include "opf/rat.hpp"
#include "opf/vfield.hpp"

namespace opf::sweep {

struct InvariantCase {
  families::FamilyId id;
  families::FamilyParams params;
  int n = 0;
  Rat mu;
};

/// Every family for n = 0..maxN and mu in {1, -1, 2, 1/3}, with alpha, beta
/// drawn from {-1/2, 0, 1/2, 1} where the row uses them and they are admissible.
std::vector<InvariantCase> invariantGrid(int maxN = 12);

struct InvariantOutcome {
  bool exact = false;
  int termsOfResidual = 0;  // terms of X f - K f
};

/// X f - (rho' + mu v - tau) f with f = mu v P_n + rho P_n', computed from scratch.
/// corruptCofactor adds 1 to K (fault injection for the acceptance harness).
InvariantOutcome checkInvariantCase(const InvariantCase& c, bool corruptCofactor = false);

/// OpenMP over the cases; results are in case order.
std::vector<InvariantOutcome> invariantSweep(const std::vector<InvariantCase>& cases, bool corruptCofactor = false);
std::vector<InvariantOutcome> invariantSweepSerial(const std::vector<InvariantCase>& cases,
                                                   bool corruptCofactor = false);

struct DriftOutcome {
  double maxDrift = 0;
  bool ok = false;  // the run completed; when false `error` is set
  std::string error;
};

/// checkInvariantAlongFlow for many starts, OpenMP over the starts.
std::vector<DriftOutcome> darbouxDrifts(const darboux::Certificate& cert, const vfield::QuadSystem& sys,
                                        const std::vector<std::array<double, 2>>& starts, double T,
                                        double integratorTol = 1e-10);
std::vector<DriftOutcome> darbouxDriftsSerial(const darboux::Certificate& cert, const vfield::QuadSystem& sys,
                                              const std::vector<std::array<double, 2>>& starts, double T,
                                              double integratorTol = 1e-10);

}  // namespace opf::sweep
