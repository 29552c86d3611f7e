#include "opf/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "opf/classify.hpp"
#include "opf/compactify.hpp"
#include "opf/darboux.hpp"
#include "opf/error.hpp"
#include "opf/integrals.hpp"
#include "opf/portrait.hpp"
#include "opf/sweep.hpp"

namespace opf::acceptance {

using classify::Kind;

namespace {

// Runs body, catching library errors as failures, and fills in the timing.
Result timed(const std::string& id, const std::string& title, double budget,
             const std::function<bool(std::ostringstream&)>& body) {
  Result r{id, title, false, {}, 0};
  std::ostringstream detail;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && r.seconds > budget) {
    detail << (detail.tellp() > 0 ? "; " : "") << "over time budget " << budget << " s";
    r.pass = false;
  }
  r.detail = detail.str();
  return r;
}

std::map<Kind, int> kinds(const std::vector<classify::CritReport>& reps) {
  std::map<Kind, int> out;
  for (const auto& r : reps) ++out[r.cls.kind];
  return out;
}

darboux::Problem linesProblem() {
  const BiPoly x = BiPoly::x();
  darboux::Problem p;
  p.system = vfield::buildParametricA(Rat(2), Rat(1), Rat(0));
  p.curves = {{x + BiPoly(1), BiPoly(1) - x}, {x - BiPoly(1), BiPoly(-1) - x}};
  return p;
}

}  // namespace

Result invariantCurves(const Options& opt) {
  return timed("A1", "invariant algebraic curve X f = K f", 10, [&](std::ostringstream& d) {
    const auto cases = sweep::invariantGrid(12);
    const auto out = sweep::invariantSweep(cases, opt.corruptCofactor);
    int bad = 0;
    for (const auto& o : out) bad += !o.exact;
    d << cases.size() << " instances, " << bad << " with nonzero residual";
    return bad == 0;
  });
}

Result darbouxInvariant() {
  return timed("A2", "Darboux invariant of the two-line system", 5, [](std::ostringstream& d) {
    const auto p = linesProblem();
    const auto cert = darboux::solveCofactorRelation(p, Rat(1));
    if (!cert) {
      d << "cofactor relation infeasible";
      return false;
    }
    const bool exact = cert->lambdas == std::vector<Rat>{Rat(-1, 2), Rat(1, 2)};
    std::mt19937 rng(20);
    std::uniform_real_distribution<double> strip(-0.9, 0.9), outer(1.1, 3.0), vs(-1.0, -0.5);
    std::vector<std::array<double, 2>> starts;
    for (int k = 0; k < 5; ++k) {
      starts.push_back({vs(rng), strip(rng)});
      starts.push_back({vs(rng), outer(rng)});
    }
    const auto drifts = sweep::darbouxDrifts(*cert, p.system, starts, 1.0, 1e-10);
    double worst = 0;
    bool ran = true;
    for (const auto& o : drifts) {
      ran = ran && o.ok;
      worst = std::max(worst, o.maxDrift);
    }
    d << "lambdas " << cert->lambdas[0] << ", " << cert->lambdas[1] << "; max drift " << worst << " over "
      << starts.size() << " starts";
    return exact && ran && worst < 1e-6;
  });
}

Result finiteFamilyA() {
  return timed("A3", "finite points of shape A", 2, [](std::ostringstream& d) {
    int systems = 0;
    bool ok = true;
    for (int a : {-1, 1, 2})
      for (int lam : {2, 6})
        for (int mu : {-1, 1}) {
          const auto reps = classify::classifyFinite(vfield::buildParametricA(Rat(lam), Rat(mu), Rat(a)));
          auto k = kinds(reps);
          bool exact = true;
          for (const auto& r : reps) {
            const auto* e = std::get_if<classify::EigenEvidence>(&r.cls.evidence);
            exact = exact && e && e->exactSigns;
          }
          const bool good = reps.size() == 4 && k[Kind::Saddle] == 2 && k[Kind::NodeStable] == 1 &&
                            k[Kind::NodeUnstable] == 1 && exact;
          if (!good) d << "a=" << a << " lambda=" << lam << " mu=" << mu << " wrong kinds; ";
          ok = ok && good;
          ++systems;
        }
    for (int lam : {2, 6})
      for (int mu : {-1, 1}) {
        const auto reps = classify::classifyFinite(vfield::buildParametricA(Rat(lam), Rat(mu), Rat(0)));
        bool good = reps.size() == 2;
        for (const auto& r : reps) {
          const auto* e = std::get_if<classify::SemiEvidence>(&r.cls.evidence);
          good = good && r.cls.kind == Kind::SaddleNode && e && e->m == 2 && e->am == Rat(mu);
        }
        if (!good) d << "a=0 lambda=" << lam << " mu=" << mu << " not a pair of saddle-nodes; ";
        ok = ok && good;
        ++systems;
      }
    d << systems << " systems";
    return ok;
  });
}

Result finiteFamilyB() {
  return timed("A4", "finite points of shape B", 0, [](std::ostringstream& d) {
    bool ok = true;
    int systems = 0;
    for (int a : {-2, -1, 1, 3})
      for (int lam : {1, 4})
        for (int mu : {-1, 2})
          for (int b : {0, 1}) {
            const auto reps = classify::classifyFinite(vfield::buildParametricB(Rat(lam), Rat(mu), Rat(a), Rat(b)));
            auto k = kinds(reps);
            const bool good = reps.size() == 2 && k[Kind::Saddle] == 1 && k[Kind::NodeUnstable] == 1;
            if (!good) d << "a=" << a << " lambda=" << lam << " mu=" << mu << " b=" << b << " wrong kinds; ";
            ok = ok && good;
            ++systems;
          }
    const auto zero = classify::classifyFinite(vfield::buildParametricB(Rat(2), Rat(1), Rat(0), Rat(1)));
    const bool origin = zero.size() == 1 && zero[0].cls.kind == Kind::SaddleNode && zero[0].point.exact() &&
                        zero[0].point.v.exact->isZero() && zero[0].point.x.exact->isZero();
    if (!origin) d << "a=0 origin is not a saddle-node; ";
    d << systems + 1 << " systems";
    return ok && origin;
  });
}

Result infinity() {
  return timed("A5", "critical points at infinity", 0, [](std::ostringstream& d) {
    bool ok = true;
    for (int a : {-1, 0, 1, 2})
      for (int lam : {2, 6})
        for (int mu : {-1, 1}) {
          const auto reps = compactify::infinityCritPoints(vfield::buildParametricA(Rat(lam), Rat(mu), Rat(a)));
          const double D = (a + 1.0) * (a + 1.0) + 4.0 * lam;
          const double v1 = (-(a + 1.0) + std::sqrt(D)) / (2.0 * mu);
          const double v2 = (-(a + 1.0) - std::sqrt(D)) / (2.0 * mu);
          int node = 0, saddle = 0, origin = 0;
          for (const auto& r : reps) {
            if (r.point.chart == classify::Chart::U2) {
              origin += r.cls.kind == (mu > 0 ? Kind::NodeStable : Kind::NodeUnstable);
            } else if (std::abs(r.point.v.value - v1) < 1e-10) {
              node += r.cls.kind == Kind::NodeUnstable;
            } else if (std::abs(r.point.v.value - v2) < 1e-10) {
              saddle += r.cls.kind == Kind::Saddle;
            }
          }
          const bool good = reps.size() == 3 && node == 1 && saddle == 1 && origin == 1;
          if (!good) d << "shape A a=" << a << " lambda=" << lam << " mu=" << mu << " mismatch; ";
          ok = ok && good;
        }
    for (int b : {1, -2, 3})
      for (int mu : {-1, 2}) {
        int sn = 0;
        for (const auto& r : compactify::infinityCritPoints(vfield::buildParametricB(Rat(2), Rat(mu), Rat(1), Rat(b))))
          sn += r.point.chart == classify::Chart::U1 && r.cls.kind == Kind::SaddleNode;
        if (sn != 2) d << "shape B b=" << b << " mu=" << mu << " has " << sn << " saddle-nodes; ";
        ok = ok && sn == 2;
      }
    for (int lam : {1, 4}) {
      const auto reps = compactify::infinityCritPoints(vfield::buildParametricB(Rat(lam), Rat(1), Rat(1), Rat(0)));
      const auto* e = reps.empty() ? nullptr : std::get_if<classify::NilpotentEvidence>(&reps[0].cls.evidence);
      const bool good = e && reps[0].cls.kind == Kind::SaddleNode && e->m == 4 && e->n == 1;
      if (!good) d << "shape B b=0 lambda=" << lam << " not a nilpotent saddle-node (4, 1); ";
      ok = ok && good;
    }
    if (ok) d << "shape A closed forms, shape B saddle-nodes and nilpotent (m, n) = (4, 1)";
    return ok;
  });
}

Result chebyshevExact() {
  return timed("A6", "Chebyshev equation and reduced equation", 0, [](std::ostringstream& d) {
    bool ok = true;
    const UniPoly rho{Rat(1), Rat(0), Rat(-1)}, x{Rat(0), Rat(1)};
    const auto cheb = families::makeFamily(families::FamilyId::ChebyshevT);
    for (int n = 0; n <= 12; ++n) {
      const auto T = families::polyOf(cheb, n).poly;
      const UniPoly direct = rho * T.derivative().derivative() - x * T.derivative() + Rat(n * n) * T;
      bool good = direct.isZero();
      if (n >= 1) {
        const Rat lam(n * n);
        const auto num = integrals::reducedEquation(n).numerator;
        good = good && integrals::chebyshevSolutionsResidual(n, {0.3}).residualT.isZero() &&
               num.coeff(0) == Rat(-2) - Rat(4) * lam && num.coeff(1).isZero() &&
               num.coeff(2) == Rat(4) * lam - Rat(1) && num.degree() == 2;
      }
      if (!good) d << "n=" << n << " mismatch; ";
      ok = ok && good;
    }
    if (ok) d << "n = 0..12 exact";
    return ok;
  });
}

Result chebyshevIntegrals() {
  return timed("A7", "Chebyshev first integrals", 10, [](std::ostringstream& d) {
    const std::vector<std::array<double, 2>> starts{{0.2, 0.5}, {-0.3, 0.1}, {0.4, -0.6}};
    double drift = 0;
    bool ok = true;
    for (int n = 1; n <= 3; ++n)
      for (int mu : {-1, 1}) {
        const auto rep = integrals::checkFirstIntegralFlow(integrals::firstIntegralV(n, Rat(mu)),
                                                           integrals::chebyshevSystem(n, Rat(mu)), starts, 0.5, 1e-6);
        drift = std::max(drift, rep.maxDrift);
        ok = ok && rep.pass;
      }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> vs(-3, 3), xs(-0.98, 0.98), outer(1.05, 3);
    double roundtrip = 0, agree = 0;
    int points = 0;
    for (int mu : {-1, 1}) {
      const auto br = integrals::bridgeWV(Rat(mu));
      for (int k = 0; k < 100; ++k) {
        const double v = vs(rng), x = k % 2 ? xs(rng) : outer(rng);
        roundtrip = std::max(roundtrip, std::abs(br.toV(br.toW(v, x), x) - v) / std::max(1.0, std::abs(v)));
      }
    }
    for (int n = 1; n <= 3; ++n) {
      const auto Iw = integrals::firstIntegralW(n);
      const auto Iv = integrals::firstIntegralV(n, Rat(1));
      const auto br = integrals::bridgeWV(Rat(1));
      for (int k = 0; points < 200 * n && k < 1000; ++k) {
        const double v = vs(rng), x = xs(rng);
        try {
          const auto a = Iv.eval(v, x), c = Iw.eval(br.toW(v, x), x);
          agree = std::max(agree, std::abs(a - c) / std::max(1.0, std::abs(a)));
          ++points;
        } catch (const Error&) {
        }
      }
    }
    d << "max drift " << drift << "; bridge roundtrip " << roundtrip << "; w/v agreement " << agree << " at "
      << points << " points";
    return ok && drift < 1e-6 && roundtrip < 1e-12 && agree < 1e-9 && points == 600;
  });
}

Result portraitIntegrity() {
  return timed("A8", "portrait integrity", 0, [](std::ostringstream& d) {
    std::vector<vfield::QuadSystem> grid;
    for (int a : {-1, 0, 1, 2}) grid.push_back(vfield::buildParametricA(Rat(2), Rat(1), Rat(a)));
    grid.push_back(vfield::buildParametricA(Rat(6), Rat(-1), Rat(1)));
    for (int a : {0, 2})
      for (int b : {0, 1}) grid.push_back(vfield::buildParametricB(Rat(2), Rat(1), Rat(a), Rat(b)));

    bool ok = true;
    const auto count = [](const std::string& s) {
      int n = 0;
      for (auto p = s.find("class=\"glyph\""); p != std::string::npos; p = s.find("class=\"glyph\"", p + 1)) ++n;
      return n;
    };
    for (const auto& sys : grid) {
      const auto finite = classify::classifyFinite(sys);
      const auto inf = compactify::infinityCritPoints(sys);
      for (bool disk : {false, true}) {
        portrait::PortraitSpec spec;
        spec.disk = disk;
        spec.gridSize = 3;
        const auto one = portrait::renderPortrait(sys, spec, finite, inf);
        const auto two = portrait::renderPortrait(sys, spec, finite, inf);
        const int want = static_cast<int>(finite.size() + (disk ? 2 * inf.size() : 0));
        if (count(one.svg) != want) {
          d << "glyph count " << count(one.svg) << " != " << want << "; ";
          ok = false;
        }
        if (one.svg != two.svg) {
          d << "SVG differs between runs; ";
          ok = false;
        }
      }
    }

    const auto p = linesProblem();
    const auto cert = *darboux::solveCofactorRelation(p, Rat(1));
    portrait::PortraitSpec spec;
    spec.tol = 1e-8;
    const auto pic = portrait::renderPortrait(p.system, spec, classify::classifyFinite(p.system),
                                              compactify::infinityCritPoints(p.system));
    double worst = 0;
    int checked = 0;
    for (const auto& tr : pic.trajectories) {
      if (tr.seed.kind == portrait::SeedKind::InvariantLine) continue;
      const auto& s0 = tr.samples[0];
      const double i0 = std::abs(darboux::invariantValue(cert, s0.v, s0.x, s0.t));
      for (const auto& s : tr.samples)
        worst = std::max(worst, std::abs(std::abs(darboux::invariantValue(cert, s.v, s.x, s.t)) - i0) / i0);
      ++checked;
    }
    d << grid.size() << " fixtures; Darboux drift " << worst << " on " << checked << " trajectories";
    return ok && worst < 1e-5 && checked > 0;
  });
}

std::vector<Result> runAll(const Options& opt) {
  return {invariantCurves(opt), darbouxInvariant(), finiteFamilyA(), finiteFamilyB(),
          infinity(),           chebyshevExact(),   chebyshevIntegrals(), portraitIntegrity()};
}

}  // namespace opf::acceptance
