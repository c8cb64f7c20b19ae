#pragma once

#include <json.hpp>

#include "edsp/bounds.hpp"
#include "edsp/solver.hpp"
#include "edsp/verify.hpp"

namespace edsp {

/// {"m":..,"d":..,"k":..,"ell":..,"y":"<decimal>"}
nlohmann::json to_json(const Solution& s);
/// Throws ConfigError on a malformed object.
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundCertificate& c);
/// The trailing report object of a solve run (certificate, completeness, statistics).
nlohmann::json to_json(const SearchReport& r);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace edsp
