#pragma once

#include <json.hpp>

#include "opf/classify.hpp"
#include "opf/compactify.hpp"
#include "opf/darboux.hpp"
#include "opf/families.hpp"
#include "opf/rat.hpp"
#include "opf/vfield.hpp"

namespace opf::json_io {

using nlohmann::json;

/// Rationals travel as "p/q" strings.
json toJson(const Rat& r);
Rat ratFrom(const json& j);

json toJson(const families::FamilySpec& spec);
json toJson(const vfield::Provenance& p);
/// {P, Q, degree, names, provenance}
json toJson(const vfield::QuadSystem& sys);
/// Accepts the output of toJson(QuadSystem); only P and Q are required.
/// Throws ParseError.
vfield::QuadSystem systemFrom(const json& j);

json toJson(const classify::Coord& c);
json toJson(const classify::Classification& c);
/// {location, chart, kind, stability, evidence, note}
json toJson(const classify::CritReport& r);
/// The CritReport fields for the chart point plus direction and antipode.
json toJson(const compactify::InfinityReport& r);
/// {lambdas, mus, s, invariant, nullspace}
json toJson(const darboux::Certificate& c);

}  // namespace opf::json_io
