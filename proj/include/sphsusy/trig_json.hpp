#pragma once

#include <json.hpp>

#include "sphsusy/trig_form.hpp"

namespace sphsusy {

/// {twice_exponent, order, coeffs: [[["num","den"],...],...]} with decimal
/// strings, so arbitrary precision survives the round trip bit-exactly.
nlohmann::json trig_form_to_json(const TrigForm& form);

TrigForm trig_form_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace sphsusy
