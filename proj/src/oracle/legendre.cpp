#include "sphsusy/oracle/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace sphsusy::oracle {

double assoc_legendre(int m, int l, double x) {
    if (m < 0 || l < m) throw std::invalid_argument("assoc_legendre: need l >= m >= 0");
    if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error("assoc_legendre: |x| > 1");

    // P_m^m = (2m-1)!! (1-x^2)^{m/2}
    double pmm = 1.0;
    if (m > 0) {
        const double s = std::sqrt(1.0 - x) * std::sqrt(1.0 + x);
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= fact * s;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;

    double p_prev = pmm;
    double p_curr = (2.0 * m + 1.0) * x * pmm;  // P_{m+1}^m
    for (int ll = m + 2; ll <= l; ++ll) {
        const double p_next =
            ((2.0 * ll - 1.0) * x * p_curr - (ll + m - 1.0) * p_prev) / static_cast<double>(ll - m);
        p_prev = p_curr;
        p_curr = p_next;
    }
    return p_curr;
}

double assoc_legendre_norm(int m, int l) {
    if (m < 0 || l < m) throw std::invalid_argument("assoc_legendre_norm: need l >= m >= 0");
    const double log_ratio = std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
    return std::sqrt((2.0 * l + 1.0) / 2.0) * std::exp(0.5 * log_ratio);
}

CosPoly legendre_derivative_poly(int l, int m) {
    if (m < 0 || l < m) throw std::invalid_argument("legendre_derivative_poly: need l >= m >= 0");
    // Legendre P_l by the three-term recurrence in exact arithmetic.
    CosPoly p_prev = CosPoly::constant(Rational(1));
    if (l == 0) {
        CosPoly p = p_prev;
        for (int j = 0; j < m; ++j) p = p.derivative();
        return p;
    }
    CosPoly p_curr = CosPoly::monomial(1, Rational(1));
    const CosPoly x = CosPoly::monomial(1, Rational(1));
    for (int ll = 2; ll <= l; ++ll) {
        CosPoly p_next =
            (x * p_curr).scaled(Rational(2 * ll - 1, ll)) - p_prev.scaled(Rational(ll - 1, ll));
        p_prev = p_curr;
        p_curr = std::move(p_next);
    }
    for (int j = 0; j < m; ++j) p_curr = p_curr.derivative();
    return p_curr;
}

TrigForm legendre_trig_form(int l, int m, int order) {
    return TrigForm::single(order, 2 * m + 1, 0, legendre_derivative_poly(l, m));
}

}  // namespace sphsusy::oracle
