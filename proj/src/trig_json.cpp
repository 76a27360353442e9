#include "sphsusy/trig_json.hpp"

#include <stdexcept>

namespace sphsusy {

nlohmann::json rational_to_json(const Rational& r) {
    return nlohmann::json::array({r.numerator().str(), r.denominator().str()});
}

Rational rational_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("rational_from_json: expected [\"num\",\"den\"]");
    return Rational(BigInt(j[0].get<std::string>()), BigInt(j[1].get<std::string>()));
}

nlohmann::json trig_form_to_json(const TrigForm& form) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k <= form.order(); ++k) {
        nlohmann::json poly = nlohmann::json::array();
        for (const Rational& c : form.alpha_coeff(k).coeffs()) poly.push_back(rational_to_json(c));
        coeffs.push_back(std::move(poly));
    }
    return nlohmann::json{
        {"twice_exponent", form.twice_exponent()}, {"order", form.order()}, {"coeffs", std::move(coeffs)}};
}

TrigForm trig_form_from_json(const nlohmann::json& j) {
    const int twice_exponent = j.at("twice_exponent").get<int>();
    const int order = j.at("order").get<int>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.size() != static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("trig_form_from_json: coeffs length must be order + 1");
    AlphaSeries<CosPoly> series(order);
    for (int k = 0; k <= order; ++k) {
        std::vector<Rational> poly;
        for (const auto& c : coeffs[static_cast<std::size_t>(k)]) poly.push_back(rational_from_json(c));
        series.term(k) = CosPoly(std::move(poly));
    }
    return TrigForm(twice_exponent, std::move(series));
}

}  // namespace sphsusy
