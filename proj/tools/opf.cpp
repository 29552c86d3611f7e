#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "opf/acceptance.hpp"
#include "opf/classify.hpp"
#include "opf/compactify.hpp"
#include "opf/darboux.hpp"
#include "opf/error.hpp"
#include "opf/integrals.hpp"
#include "opf/json_io.hpp"
#include "opf/portrait.hpp"
#include "opf/roots.hpp"
#include "opf/sweep.hpp"

using namespace opf;
using json_io::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Selector {
  std::string family;
  int n = 0;
  std::string mu = "1", a = "0", b = "0", lambda = "2", alpha, beta;
  std::string systemJson;
  bool jacobiShape = false, laguerreShape = false;
};

const CLI::Validator kRational(
    [](std::string& s) -> std::string {
      try {
        Rat::parse(s);
      } catch (const Error&) {
        return "not a rational number: " + s;
      }
      return {};
    },
    "RAT", "rational");

const CLI::Validator kNonzero(
    [](std::string& s) -> std::string {
      try {
        if (Rat::parse(s).isZero()) return "ZeroMu: mu must be nonzero";
      } catch (const Error&) {
      }
      return {};
    },
    "", "nonzero");

void addSelector(CLI::App* sub, Selector& s, bool withN = true) {
  auto* fam = sub->add_option("--family", s.family, "family name (jacobi, legendre, chebyshev-t, ...)");
  if (withN) sub->add_option("--n", s.n, "degree")->check(CLI::Range(0, 200));
  sub->add_option("--mu", s.mu, "coupling mu (nonzero)")->check(kRational & kNonzero);
  sub->add_option("--a", s.a, "shape parameter a")->check(kRational);
  sub->add_option("--b", s.b, "shape parameter b")->check(kRational);
  sub->add_option("--lambda", s.lambda, "eigenvalue lambda_n for the shape systems")->check(kRational);
  sub->add_option("--alpha", s.alpha, "family parameter alpha")->check(kRational);
  sub->add_option("--beta", s.beta, "family parameter beta")->check(kRational);
  auto* js = sub->add_option("--system-json", s.systemJson, "system JSON file, '-' for stdin, or inline JSON");
  auto* ja = sub->add_flag("--jacobi-shape", s.jacobiShape, "v' = (lambda/mu)(1-x^2) + a v x + b v + mu v^2, x' = 1-x^2");
  auto* la = sub->add_flag("--laguerre-shape", s.laguerreShape, "v' = (lambda/mu) x + a v + b v x + mu v^2, x' = x");
  fam->excludes(js)->excludes(ja)->excludes(la);
  js->excludes(ja)->excludes(la);
  ja->excludes(la);
}

families::FamilyParams paramsOf(const Selector& s) {
  families::FamilyParams p;
  if (!s.alpha.empty()) p.alpha = Rat::parse(s.alpha);
  if (!s.beta.empty()) p.beta = Rat::parse(s.beta);
  return p;
}

families::FamilySpec familyOf(const Selector& s) {
  const auto id = families::parseFamily(s.family);
  if (!id) throw Error(ErrorCode::ParseError, "unknown family '" + s.family + "'");
  return families::makeFamily(*id, paramsOf(s));
}

std::string readAll(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

vfield::QuadSystem systemOf(const Selector& s) {
  if (!s.family.empty()) return vfield::buildFamilySystem(familyOf(s), s.n, Rat::parse(s.mu));
  if (s.jacobiShape)
    return vfield::buildParametricA(Rat::parse(s.lambda), Rat::parse(s.mu), Rat::parse(s.a), Rat::parse(s.b));
  if (s.laguerreShape)
    return vfield::buildParametricB(Rat::parse(s.lambda), Rat::parse(s.mu), Rat::parse(s.a), Rat::parse(s.b));
  if (!s.systemJson.empty()) {
    std::string text;
    if (s.systemJson == "-") {
      text = readAll(std::cin);
    } else if (s.systemJson.front() == '{') {
      text = s.systemJson;
    } else {
      std::ifstream f(s.systemJson);
      if (!f) throw Error(ErrorCode::ParseError, "cannot read " + s.systemJson);
      text = readAll(f);
    }
    try {
      return json_io::systemFrom(json::parse(text));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  throw Error(ErrorCode::PreconditionViolated,
              "select a system with --family, --jacobi-shape, --laguerre-shape or --system-json");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool writeFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int exitFor(ErrorCode c) {
  switch (c) {
    case ErrorCode::PreconditionViolated:
    case ErrorCode::UnsupportedParams:
    case ErrorCode::ZeroMu:
    case ErrorCode::NonpositiveLambda:
    case ErrorCode::TruncationTooLow:
    case ErrorCode::ParseError:
      return kUsage;
    default:
      return kFailed;
  }
}

int cmdFamilies(const Selector& s) {
  json rows = json::array();
  for (const auto& spec : families::registry(paramsOf(s))) rows.push_back(json_io::toJson(spec));
  emit(rows);
  return kOk;
}

int cmdSystem(const Selector& s) {
  emit(json_io::toJson(systemOf(s)));
  return kOk;
}

int cmdVerifyInvariant(const Selector& s, const std::string& curve) {
  const auto sys = systemOf(s);
  BiPoly f;
  if (!curve.empty()) {
    f = parseBiPoly(curve, sys.names);
  } else if (!s.family.empty()) {
    const auto spec = familyOf(s);
    const auto p = families::polyOf(spec, s.n);
    f = BiPoly::v().scaled(Rat::parse(s.mu)) * BiPoly::fromUni(p.poly) +
        BiPoly::fromUni(spec.rho) * BiPoly::fromUni(p.derivative);
  } else {
    throw Error(ErrorCode::PreconditionViolated, "--curve is required unless --family is given");
  }
  const auto check = vfield::verifyInvariant(sys, f);
  json out = {{"f", f.toString(sys.names)},
              {"exact", check.cofactor.has_value()},
              {"remainder", check.remainder.toString(sys.names)}};
  out["cofactor"] = check.cofactor ? json(check.cofactor->toString(sys.names)) : json(nullptr);
  emit(out);
  return check.cofactor ? kOk : kFailed;
}

// Lines x = r (resp. v = r) through rational roots of Q (resp. P) when that
// component depends on one variable only; these are invariant by construction.
std::vector<BiPoly> candidateLines(const vfield::QuadSystem& sys) {
  std::vector<BiPoly> out;
  const auto add = [&](const BiPoly& comp, Var in) {
    if (comp.isZero() || !comp.isFreeOf(in == Var::X ? Var::V : Var::X)) return;
    if (!comp.totalDegree() || *comp.totalDegree() == 0) return;
    for (const auto& r : realRoots(comp.toUni(in)))
      if (r.exact) out.push_back(BiPoly::var(in) - BiPoly(*r.exact));
  };
  add(sys.Q, Var::X);
  add(sys.P, Var::V);
  return out;
}

int cmdDarboux(const Selector& s, const std::vector<std::string>& curves, const std::string& sText, double T,
               double tol) {
  const auto sys = systemOf(s);
  const Rat sVal = Rat::parse(sText);
  if (sVal.isZero()) throw Error(ErrorCode::PreconditionViolated, "s must be nonzero");

  std::vector<BiPoly> candidates;
  for (const auto& c : curves) candidates.push_back(parseBiPoly(c, sys.names));
  if (candidates.empty()) {
    candidates = candidateLines(sys);
    if (!s.family.empty()) {
      const auto spec = familyOf(s);
      const auto p = families::polyOf(spec, s.n);
      candidates.push_back(BiPoly::v().scaled(Rat::parse(s.mu)) * BiPoly::fromUni(p.poly) +
                           BiPoly::fromUni(spec.rho) * BiPoly::fromUni(p.derivative));
    }
  }
  darboux::Problem prob;
  prob.system = sys;
  json rejected = json::array();
  for (const auto& f : candidates) {
    const auto chk = vfield::verifyInvariant(sys, f);
    if (chk.cofactor)
      prob.curves.push_back({f, *chk.cofactor});
    else
      rejected.push_back(f.toString(sys.names));
  }
  const auto cert = prob.curves.empty() ? std::nullopt : darboux::solveCofactorRelation(prob, sVal);
  if (!cert) {
    emit({{"feasible", false}, {"s", sText}, {"not_invariant", rejected}});
    return kFailed;
  }
  auto cc = *cert;
  cc.names = sys.names;
  json out = json_io::toJson(cc);
  out["feasible"] = true;
  if (!rejected.empty()) out["not_invariant"] = rejected;

  // flow check from deterministic starts off the curves
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> box(-0.9, 0.9);
  std::vector<std::array<double, 2>> starts;
  while (starts.size() < 10) {
    const double v = box(rng), x = box(rng);
    bool clear = true;
    for (const auto& c : cc.curves) clear = clear && std::abs(c.f.eval(v, x)) > 1e-3;
    if (clear) starts.push_back({v, x});
  }
  const auto drifts = sweep::darbouxDrifts(cc, sys, starts, T, tol);
  double worst = 0;
  int completed = 0;
  for (const auto& d : drifts)
    if (d.ok) {
      worst = std::max(worst, d.maxDrift);
      ++completed;
    }
  const bool pass = completed > 0 && worst < 1e-6;
  out["flow_check"] = {{"max_drift", worst},   {"starts", starts.size()}, {"completed", completed},
                       {"horizon", T},         {"integrator_tol", tol},   {"pass", pass}};
  emit(out);
  return pass ? kOk : kFailed;
}

int cmdCriticalPoints(const Selector& s, bool withInfinity) {
  const auto sys = systemOf(s);
  json out = json::array();
  for (const auto& r : classify::classifyFinite(sys)) out.push_back(json_io::toJson(r));
  if (withInfinity)
    for (const auto& r : compactify::infinityCritPoints(sys)) out.push_back(json_io::toJson(r));
  emit(out);
  return kOk;
}

struct PortraitArgs {
  bool disk = false;
  std::string svg, csv, out;
  std::vector<double> window;
  std::vector<double> seeds;
  int grid = 5;
  int maxTrajectories = 400;
  double tol = 1e-8, horizon = 8;
};

int cmdPortrait(const Selector& s, const PortraitArgs& a) {
  const auto sys = systemOf(s);
  portrait::PortraitSpec spec;
  spec.disk = a.disk;
  spec.gridSize = a.grid;
  spec.maxTrajectories = a.maxTrajectories;
  spec.tol = a.tol;
  spec.horizon = a.horizon;
  if (!a.window.empty()) {
    if (a.window.size() != 4 || a.window[0] >= a.window[1] || a.window[2] >= a.window[3])
      throw Error(ErrorCode::PreconditionViolated, "--window needs vmin vmax xmin xmax");
    spec.window = portrait::Window{a.window[0], a.window[1], a.window[2], a.window[3]};
  }
  if (a.seeds.size() % 2) throw Error(ErrorCode::PreconditionViolated, "--seed takes v x pairs");
  for (std::size_t i = 0; i < a.seeds.size(); i += 2) spec.userSeeds.push_back({a.seeds[i], a.seeds[i + 1]});

  const auto finite = classify::classifyFinite(sys);
  std::vector<compactify::InfinityReport> inf;
  try {
    inf = compactify::infinityCritPoints(sys);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IdenticallyZero) throw;
    std::cerr << "warning: " << e.what() << "\n";
  }
  const auto pic = portrait::renderPortrait(sys, spec, finite, inf);

  json files = json::object();
  if (!a.svg.empty()) {
    if (!writeFile(a.svg, pic.svg)) throw Error(ErrorCode::PreconditionViolated, "cannot write " + a.svg);
    files["svg"] = a.svg;
  }
  if (!a.csv.empty()) {
    if (!writeFile(a.csv, pic.csv)) throw Error(ErrorCode::PreconditionViolated, "cannot write " + a.csv);
    files["csv"] = a.csv;
  }
  json crit = json::array();
  for (const auto& r : finite) crit.push_back(json_io::toJson(r));
  for (const auto& r : inf) crit.push_back(json_io::toJson(r));
  json reasons = json::object();
  for (const auto& t : pic.trajectories) {
    const std::string key(ode::stopReasonName(t.reason));
    reasons[key] = reasons.value(key, 0) + 1;
  }
  const json manifest = {
      {"spec",
       {{"disk", spec.disk},
        {"window", {pic.window.vmin, pic.window.vmax, pic.window.xmin, pic.window.xmax}},
        {"grid", spec.gridSize},
        {"tol", spec.tol},
        {"horizon", spec.horizon},
        {"max_trajectories", spec.maxTrajectories}}},
      {"system", json_io::toJson(sys)},
      {"critical_points", crit},
      {"trajectories", pic.trajectories.size()},
      {"termination", reasons},
      {"glyphs", {{"finite", pic.finiteGlyphs}, {"boundary", pic.boundaryGlyphs}}},
      {"files", files}};
  if (a.out.empty()) {
    emit(manifest);
  } else if (!writeFile(a.out, manifest.dump(2) + "\n")) {
    throw Error(ErrorCode::PreconditionViolated, "cannot write " + a.out);
  }
  return kOk;
}

int cmdChebyshev(int n, const std::string& muText, bool checkFlow, double T, double tol) {
  if (n < 1) throw Error(ErrorCode::PreconditionViolated, "n must be positive");
  const Rat mu = Rat::parse(muText);
  const auto res = integrals::chebyshevSolutionsResidual(n, {-0.7, -0.2, 0.1, 0.6});
  const auto Iw = integrals::firstIntegralW(n);
  const auto Iv = integrals::firstIntegralV(n, mu);
  json out = {{"n", n},
              {"mu", json_io::toJson(mu)},
              {"exact_residual_T", res.residualT.isZero()},
              {"residual_U", res.maxResidualU},
              {"reduced_numerator", integrals::reducedEquation(n).numerator.toString()},
              {"integral_w", Iw.toString()},
              {"integral_v", Iv.toString()}};
  bool ok = res.residualT.isZero();
  if (checkFlow) {
    const std::vector<std::array<double, 2>> starts{{0.2, 0.5}, {-0.3, 0.1}, {0.4, -0.6}};
    const auto br = integrals::bridgeWV(mu);
    std::vector<std::array<double, 2>> wStarts;
    for (const auto& s : starts) wStarts.push_back({br.toW(s[0], s[1]), s[1]});
    const auto fv = integrals::checkFirstIntegralFlow(Iv, integrals::chebyshevSystem(n, mu), starts, T, 1e-6, tol);
    // the w system carries the factor 4(1-x^2)^2, so it covers the same orbits in less time
    const auto fw = integrals::checkFirstIntegralFlow(Iw, integrals::reducedSystem(n), wStarts, T / 10, 1e-6, tol);
    double roundtrip = 0;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> vs(-3, 3), xs(-0.98, 0.98);
    for (int k = 0; k < 200; ++k) {
      const double v = vs(rng), x = xs(rng);
      roundtrip = std::max(roundtrip, std::abs(br.toV(br.toW(v, x), x) - v) / std::max(1.0, std::abs(v)));
    }
    json recip = json::array();
    for (bool r : fv.reciprocal) recip.push_back(r);
    out["drift_v"] = fv.maxDrift;
    out["drift_w"] = fw.maxDrift;
    out["reciprocal_v"] = recip;
    out["bridge_roundtrip_err"] = roundtrip;
    out["flow_pass"] = fv.pass && fw.pass && roundtrip < 1e-12;
    ok = ok && fv.pass && fw.pass && roundtrip < 1e-12;
  }
  emit(out);
  return ok ? kOk : kFailed;
}

int cmdSelftest(bool asJson, bool corrupt) {
  const auto results = acceptance::runAll({corrupt});
  bool all = true;
  json arr = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (asJson)
      arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    else
      std::printf("%s %s: %s (%.2f s) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.seconds,
                  r.detail.c_str());
  }
  if (asJson) emit({{"criteria", arr}, {"pass", all}});
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial vector fields of the classical orthogonal polynomial families"};
  app.require_subcommand(1);
  bool jsonFlag = false;
  double tol = 1e-10, horizon = 1;

  Selector sel;
  auto* families = app.add_subcommand("families", "list the family table as JSON");
  families->add_option("--alpha", sel.alpha)->check(kRational);
  families->add_option("--beta", sel.beta)->check(kRational);

  auto* system = app.add_subcommand("system", "print a system as JSON");
  addSelector(system, sel);

  std::string curve;
  auto* verify = app.add_subcommand("verify-invariant", "check X f = K f exactly");
  addSelector(verify, sel);
  verify->add_option("--curve", curve, "curve f(v, x); defaults to the family's invariant curve");

  std::vector<std::string> curves;
  std::string sText = "1";
  auto* darb = app.add_subcommand("darboux", "solve the cofactor relation and check the invariant along the flow");
  addSelector(darb, sel);
  darb->add_option("--curve", curves, "invariant curve (repeatable); defaults to lines and the family curve");
  darb->add_option("--s", sText, "time exponent s")->check(kRational);
  darb->add_option("--tol", tol, "integrator tolerance")->check(CLI::Range(1e-14, 1e-3));
  darb->add_option("--horizon", horizon, "flow-check horizon T")->check(CLI::PositiveNumber);

  bool withInfinity = false;
  auto* crit = app.add_subcommand("critical-points", "classify finite (and infinite) critical points");
  addSelector(crit, sel);
  crit->add_flag("--include-infinity", withInfinity, "add the points at infinity");

  PortraitArgs pa;
  auto* port = app.add_subcommand("portrait", "render a phase portrait");
  addSelector(port, sel);
  port->add_flag("--disk", pa.disk, "Poincare disk instead of a plane window");
  port->add_option("--svg", pa.svg, "SVG output path");
  port->add_option("--csv", pa.csv, "trajectory CSV output path");
  port->add_option("-o,--out", pa.out, "manifest JSON path (stdout otherwise)");
  port->add_option("--window", pa.window, "vmin vmax xmin xmax")->expected(4);
  port->add_option("--seed", pa.seeds, "extra seed v x (repeatable)")->expected(2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  port->add_option("--grid", pa.grid, "grid seeds per side")->check(CLI::Range(0, 50));
  port->add_option("--max-trajectories", pa.maxTrajectories, "trajectory budget");
  port->add_option("--tol", pa.tol, "integrator tolerance");
  port->add_option("--horizon", pa.horizon, "rescaled-time horizon per direction")->check(CLI::PositiveNumber);

  int chebN = 1;
  std::string chebMu = "1";
  bool checkFlow = false;
  double chebT = 0.5;
  auto* cheb = app.add_subcommand("chebyshev-integral", "Chebyshev first integrals");
  cheb->add_option("--n", chebN, "degree")->check(CLI::Range(1, 200));
  cheb->add_option("--mu", chebMu, "coupling mu (nonzero)")->check(kRational & kNonzero);
  cheb->add_flag("--check-flow", checkFlow, "integrate and measure the drift of both forms");
  cheb->add_option("--horizon", chebT, "flow-check horizon")->check(CLI::PositiveNumber);
  cheb->add_option("--tol", tol, "integrator tolerance")->check(CLI::Range(1e-14, 1e-3));

  bool corrupt = false;
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_flag("--corrupt-cofactor", corrupt, "fault injection: perturb the invariant-curve cofactor");

  for (auto* sub : {families, system, verify, darb, crit, port, cheb, self})
    sub->add_flag("--json", jsonFlag, "machine-readable output (the default except for selftest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*families) return cmdFamilies(sel);
    if (*system) return cmdSystem(sel);
    if (*verify) return cmdVerifyInvariant(sel, curve);
    if (*darb) return cmdDarboux(sel, curves, sText, horizon, tol);
    if (*crit) return cmdCriticalPoints(sel, withInfinity);
    if (*port) return cmdPortrait(sel, pa);
    if (*cheb) return cmdChebyshev(chebN, chebMu, checkFlow, chebT, tol);
    if (*self) return cmdSelftest(jsonFlag, corrupt);
  } catch (const Error& e) {
    std::cerr << "opf: " << e.what() << "\n";
    return exitFor(e.code());
  }
  return kUsage;
}
