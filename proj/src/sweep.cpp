#include "opf/sweep.hpp"

#include <exception>

#include "opf/error.hpp"

namespace opf::sweep {

using families::FamilyId;

std::vector<InvariantCase> invariantGrid(int maxN) {
  const std::vector<Rat> mus{Rat(1), Rat(-1), Rat(2), Rat(1, 3)};
  const std::vector<Rat> ps{Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)};
  std::vector<InvariantCase> out;
  for (FamilyId id : families::kAllFamilies) {
    const auto proto = families::makeFamily(id);
    std::vector<families::FamilyParams> params;
    for (const auto& a : proto.usesAlpha() ? ps : std::vector<Rat>{Rat(0)})
      for (const auto& b : proto.usesBeta() ? ps : std::vector<Rat>{Rat(0)}) {
        families::FamilyParams fp;
        if (proto.usesAlpha()) fp.alpha = a;
        if (proto.usesBeta()) fp.beta = b;
        try {
          families::makeFamily(id, fp);
        } catch (const Error&) {
          continue;  // outside the classical range
        }
        params.push_back(fp);
      }
    for (const auto& fp : params)
      for (int n = 0; n <= maxN; ++n)
        for (const auto& mu : mus) out.push_back({id, fp, n, mu});
  }
  return out;
}

InvariantOutcome checkInvariantCase(const InvariantCase& c, bool corruptCofactor) {
  const auto spec = families::makeFamily(c.id, c.params);
  const auto poly = families::polyOf(spec, c.n);
  const auto sys = vfield::buildFamilySystem(spec, c.n, c.mu);
  const BiPoly rho = BiPoly::fromUni(spec.rho);
  const BiPoly f = BiPoly::v().scaled(c.mu) * BiPoly::fromUni(poly.poly) + rho * BiPoly::fromUni(poly.derivative);
  BiPoly K = BiPoly::fromUni(spec.rho.derivative()) + BiPoly::v().scaled(c.mu) - BiPoly::fromUni(spec.tau);
  if (corruptCofactor) K += BiPoly(1);
  const BiPoly r = vfield::lieDerivative(sys, f) - K * f;
  return {r.isZero(), static_cast<int>(r.terms().size())};
}

std::vector<InvariantOutcome> invariantSweep(const std::vector<InvariantCase>& cases, bool corruptCofactor) {
  std::vector<InvariantOutcome> out(cases.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cases.size(); ++i) {
    try {
      out[i] = checkInvariantCase(cases[i], corruptCofactor);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<InvariantOutcome> invariantSweepSerial(const std::vector<InvariantCase>& cases, bool corruptCofactor) {
  std::vector<InvariantOutcome> out;
  out.reserve(cases.size());
  for (const auto& c : cases) out.push_back(checkInvariantCase(c, corruptCofactor));
  return out;
}

namespace {

DriftOutcome driftOne(const darboux::Certificate& cert, const vfield::QuadSystem& sys, const std::array<double, 2>& s,
                      double T, double integratorTol) {
  try {
    const auto rep = darboux::checkInvariantAlongFlow(cert, sys, s[0], s[1], T, 1.0, integratorTol);
    return {rep.maxDrift, true, {}};
  } catch (const Error& e) {
    return {0, false, e.what()};
  }
}

}  // namespace

std::vector<DriftOutcome> darbouxDrifts(const darboux::Certificate& cert, const vfield::QuadSystem& sys,
                                        const std::vector<std::array<double, 2>>& starts, double T,
                                        double integratorTol) {
  std::vector<DriftOutcome> out(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < starts.size(); ++i) out[i] = driftOne(cert, sys, starts[i], T, integratorTol);
  return out;
}

std::vector<DriftOutcome> darbouxDriftsSerial(const darboux::Certificate& cert, const vfield::QuadSystem& sys,
                                              const std::vector<std::array<double, 2>>& starts, double T,
                                              double integratorTol) {
  std::vector<DriftOutcome> out;
  for (const auto& s : starts) out.push_back(driftOne(cert, sys, s, T, integratorTol));
  return out;
}

}  // namespace opf::sweep
