#include "opf/json_io.hpp"

#include "opf/error.hpp"

namespace opf::json_io {

json toJson(const Rat& r) { return r.toString(); }

Rat ratFrom(const json& j) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  throw Error(ErrorCode::ParseError, "expected a rational string, got " + j.dump());
}

json toJson(const families::FamilySpec& spec) {
  json params = json::object();
  if (spec.usesAlpha()) params["alpha"] = toJson(spec.params.alpha.value_or(Rat(0)));
  if (spec.usesBeta()) params["beta"] = toJson(spec.params.beta.value_or(Rat(0)));
  return {{"id", familyName(spec.id)},
          {"rho", spec.rho.toString()},
          {"tau", spec.tau.toString()},
          {"lambda_rule", spec.lambdaRule},
          {"params", params},
          {"interval", {spec.lower.toString(), spec.upper.toString()}}};
}

json toJson(const vfield::Provenance& p) {
  json j = {{"source", p.source}};
  if (p.family) j["family"] = familyName(*p.family);
  if (p.n) j["n"] = *p.n;
  const std::pair<const char*, const std::optional<Rat>*> rats[] = {
      {"mu", &p.mu}, {"a", &p.a}, {"b", &p.b}, {"lambda", &p.lambda}, {"alpha", &p.alpha}, {"beta", &p.beta}};
  for (const auto& [key, value] : rats)
    if (*value) j[key] = toJson(**value);
  return j;
}

json toJson(const vfield::QuadSystem& sys) {
  return {{"P", sys.P.toString(sys.names)},
          {"Q", sys.Q.toString(sys.names)},
          {"degree", sys.degree()},
          {"names", {sys.names[0], sys.names[1]}},
          {"provenance", toJson(sys.provenance)}};
}

vfield::QuadSystem systemFrom(const json& j) {
  if (!j.is_object() || !j.contains("P") || !j.contains("Q") || !j["P"].is_string() || !j["Q"].is_string())
    throw Error(ErrorCode::ParseError, "system JSON needs string fields P and Q");
  vfield::QuadSystem sys;
  if (j.contains("names")) {
    const auto& n = j["names"];
    if (!n.is_array() || n.size() != 2 || !n[0].is_string() || !n[1].is_string())
      throw Error(ErrorCode::ParseError, "names must be two strings");
    sys.names = {n[0].get<std::string>(), n[1].get<std::string>()};
  }
  sys.P = parseBiPoly(j["P"].get<std::string>(), sys.names);
  sys.Q = parseBiPoly(j["Q"].get<std::string>(), sys.names);
  sys.provenance.source = "user";
  if (j.contains("provenance") && j["provenance"].is_object()) {
    const auto& p = j["provenance"];
    auto& out = sys.provenance;
    if (p.contains("source")) out.source = p["source"].get<std::string>();
    if (p.contains("family")) out.family = families::parseFamily(p["family"].get<std::string>());
    if (p.contains("n")) out.n = p["n"].get<int>();
    const std::pair<const char*, std::optional<Rat>*> rats[] = {
        {"mu", &out.mu}, {"a", &out.a}, {"b", &out.b}, {"lambda", &out.lambda}, {"alpha", &out.alpha}, {"beta", &out.beta}};
    for (const auto& [key, slot] : rats)
      if (p.contains(key)) *slot = ratFrom(p[key]);
  }
  if (j.contains("degree") && j["degree"].get<int>() != sys.degree())
    throw Error(ErrorCode::ParseError, "degree field disagrees with P and Q");
  return sys;
}

json toJson(const classify::Coord& c) {
  if (c.exact) return toJson(*c.exact);
  return c.value;
}

namespace {

json complexJson(std::complex<double> z) { return {z.real(), z.imag()}; }

json evidenceJson(const classify::Evidence& e) {
  using namespace classify;
  if (const auto* eig = std::get_if<EigenEvidence>(&e))
    return {{"type", "eigenvalues"},
            {"l1", complexJson(eig->l1)},
            {"l2", complexJson(eig->l2)},
            {"exact_signs", eig->exactSigns}};
  if (const auto* s = std::get_if<SemiEvidence>(&e))
    return {{"type", "semi-hyperbolic"},
            {"m", s->m},
            {"a_m", toJson(s->am)},
            {"lambda", toJson(s->lambda)},
            {"order", s->order}};
  if (const auto* nil = std::get_if<NilpotentEvidence>(&e)) {
    json j = {{"type", "nilpotent"}, {"order", nil->order}};
    j["m"] = nil->m ? json(*nil->m) : json(nullptr);
    j["a"] = nil->a ? toJson(*nil->a) : json(nullptr);
    j["n"] = nil->n ? json(*nil->n) : json(nullptr);
    j["b"] = nil->b ? toJson(*nil->b) : json(nullptr);
    return j;
  }
  return nullptr;
}

json pointJson(const classify::CritPoint& p) { return {toJson(p.v), toJson(p.x)}; }

}  // namespace

json toJson(const classify::Classification& c) {
  json j = {{"kind", kindName(c.kind)}, {"evidence", evidenceJson(c.evidence)}};
  if (c.stability != classify::Stability::None) j["stability"] = stabilityName(c.stability);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json toJson(const classify::CritReport& r) {
  json j = {{"location", pointJson(r.point)}, {"chart", chartName(r.point.chart)}};
  j.update(toJson(r.cls));
  return j;
}

json toJson(const compactify::InfinityReport& r) {
  json j = {{"location", pointJson(r.point)},
            {"chart", chartName(r.point.chart)},
            {"direction", {r.direction[0], r.direction[1]}}};
  j.update(toJson(r.cls));
  json anti = {{"location", pointJson(r.antipode)},
               {"chart", chartName(r.antipode.chart)},
               {"direction", {-r.direction[0], -r.direction[1]}}};
  anti.update(toJson(r.antipodeCls));
  j["antipode"] = anti;
  return j;
}

json toJson(const darboux::Certificate& c) {
  json lambdas = json::array(), mus = json::array(), nullspace = json::array();
  for (const auto& l : c.lambdas) lambdas.push_back(toJson(l));
  for (const auto& m : c.mus) mus.push_back(toJson(m));
  for (const auto& dir : c.nullspace) {
    json d = json::array();
    for (const auto& r : dir) d.push_back(toJson(r));
    nullspace.push_back(d);
  }
  json curves = json::array();
  for (const auto& cv : c.curves) curves.push_back({{"f", cv.f.toString(c.names)}, {"K", cv.K.toString(c.names)}});
  return {{"lambdas", lambdas}, {"mus", mus},           {"s", toJson(c.s)},
          {"invariant", c.describe()}, {"curves", curves}, {"nullspace", nullspace}};
}

}  // namespace opf::json_io
