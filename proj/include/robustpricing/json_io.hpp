#pragma once

#include "robustpricing/envelopes.hpp"
#include "robustpricing/robust_eval.hpp"

#include <json.hpp>

#include <string>

namespace robustpricing {

/// {"v_lo": x, "v_hi": y, "points": [[p, q], ...]}; sentinels may be omitted
/// on input, canonicalization restores them.
InformationSet information_set_from_json(const nlohmann::json& j);
nlohmann::json information_set_to_json(const InformationSet& info);

/// {"atoms": [[price, weight], ...]}
PricingMechanism mechanism_from_json(const nlohmann::json& j);
nlohmann::json mechanism_to_json(const PricingMechanism& mech);

/// Knots plus per-interval segment parameters; round-trip exact.
PiecewiseCcdf ccdf_from_json(const nlohmann::json& j);
nlohmann::json ccdf_to_json(const PiecewiseCcdf& ccdf);

InformationSet load_information_set(const std::string& path);
PricingMechanism load_mechanism(const std::string& path);

} // namespace robustpricing
