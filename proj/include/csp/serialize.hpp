#pragma once

#include "csp/catalog.hpp"
#include "csp/derivation.hpp"
#include "csp/numeric.hpp"
#include "csp/symbolic.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace csp {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; non-finite values become null.
Json number_json(double value);

/// [{"coeff": "p/q", "base", "odd", "kappa", "alpha", "amp"}, ...] in term order.
Json to_json(const RadialExpr& e);
RadialExpr expr_from_json(const Json& j, Basis basis);

Json to_json(const GradedConst& c);
GradedConst graded_from_json(const Json& j);

Json to_json(const AmpLaw& law);
AmpLaw amp_law_from_json(const Json& j);

/// Fixed field order; engine hits use the same schema.
Json to_json(const Solution& sol);
/// Throws std::invalid_argument on a malformed record.
Solution solution_from_json(const Json& j);
Json to_json(const DerivationHit& hit);

Json to_json(const VerificationReport& report);
Json to_json(const MassResult& m);
Json to_json(const PohozaevReport& report);

/// Accepts a single Solution object or an array of them.
std::vector<Solution> solutions_from_json(const Json& j);

/// Two-space indentation, trailing newline.
std::string dump(const Json& j);

} // namespace csp
