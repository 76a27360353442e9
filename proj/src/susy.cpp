#include "sphsusy/susy.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sphsusy/quadrature.hpp"

namespace sphsusy::susy {

namespace {

const CosPoly kU = CosPoly::monomial(1, Rational(1));     // cos
const CosPoly kU2 = CosPoly::monomial(2, Rational(1));    // cos^2
const CosPoly kS2 = CosPoly::one_minus_u2();               // sin^2 in u

Rational half_integer(int m) { return Rational(2 * m + 1, 2); }  // m + 1/2

}  // namespace

ProblemParams::ProblemParams(int m_, double alpha_, int order_) : m(m_), alpha(alpha_), order(order_) {
    if (m < 0) throw std::invalid_argument("ProblemParams: m must be non-negative");
    if (order != 1 && order != 2) throw std::invalid_argument("ProblemParams: order must be 1 or 2");
    if (!std::isfinite(alpha)) throw std::invalid_argument("ProblemParams: alpha must be finite");
}

EnergySeries::EnergySeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("EnergySeries: empty coefficient list");
}

double EnergySeries::eval(double alpha) const {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * alpha + coeffs_[k].to_double();
    return v;
}

TrigForm potential(const ProblemParams& params) {
    // sin^{-2} [ (m^2 - 1/4) + sin^2 (-1/4 - alpha cos^2) ]
    const Rational m2q(4 * params.m * params.m - 1, 4);
    AlphaSeries<CosPoly> poly(params.order);
    poly.term(0) = CosPoly::constant(m2q) + kS2.scaled(Rational(-1, 4));
    poly.term(1) = (kS2 * kU2).scaled(Rational(-1));
    return TrigForm(-4, std::move(poly));
}

AlphaSeries<TrigForm> superpotential(const ProblemParams& params) {
    const int m = params.m;
    AlphaSeries<TrigForm> w(params.order);
    // W0 = -(m + 1/2) cot = sin^{-1} (-(m+1/2) cos)
    w.term(0) = TrigForm::single(0, -2, 0, kU.scaled(-half_integer(m)));
    // W1 = sin cos / (2m+3)
    w.term(1) = TrigForm::single(0, 2, 0, kU.scaled(Rational(1, 2 * m + 3)));
    if (params.order >= 2) {
        const Rational a(BigInt(-1), BigInt(2 * m + 3) * (2 * m + 3) * (2 * m + 3) * (2 * m + 5));
        const Rational b(BigInt(1), BigInt(2 * m + 3) * (2 * m + 3) * (2 * m + 5));
        // W2 = a sin cos + b sin^3 cos = sin [ cos (a + b sin^2) ]
        w.term(2) = TrigForm::single(0, 2, 0, kU.scaled(a) + (kU * kS2).scaled(b));
    }
    return w;
}

TrigForm superpotential_form(const ProblemParams& params) {
    const AlphaSeries<TrigForm> w = superpotential(params);
    TrigForm sum = TrigForm::zero(params.order);
    for (int k = 0; k <= params.order; ++k) sum = sum + w.term(k).with_order(params.order).alpha_shifted(k);
    return sum;
}

EnergySeries ground_energy(const ProblemParams& params) {
    const int m = params.m;
    std::vector<Rational> coeffs;
    coeffs.emplace_back(static_cast<long long>(m) * (m + 1));
    coeffs.emplace_back(Rational(-1, 2 * m + 3));
    if (params.order >= 2)
        coeffs.emplace_back(BigInt(-(2 * m + 2)), BigInt(2 * m + 3) * (2 * m + 3) * (2 * m + 3) * (2 * m + 5));
    return EnergySeries(std::move(coeffs));
}

AlphaSeries<TrigForm> riccati_residual(const ProblemParams& params, const EnergySeries& energy) {
    if (energy.order() < params.order)
        throw std::invalid_argument("riccati_residual: energy truncated below the requested order");
    const TrigForm w = superpotential_form(params);
    AlphaSeries<CosPoly> epoly(params.order);
    for (int k = 0; k <= params.order; ++k) epoly.term(k) = CosPoly::constant(energy.coeff(k));
    const TrigForm e(0, std::move(epoly));

    const TrigForm residual = (w * w - w.derivative()) - (potential(params) - e);

    AlphaSeries<TrigForm> split(params.order);
    for (int k = 0; k <= params.order; ++k) split.term(k) = residual.alpha_part(k);
    return split;
}

Eigenstate ground_state(const ProblemParams& params) {
    const int m = params.m;
    AlphaSeries<CosPoly> poly(params.order);
    poly.term(0) = CosPoly::constant(Rational(1));
    const Rational y(1, 4 * m + 6);  // exponent coefficient of sin^2
    poly.term(1) = kS2.scaled(-y);
    if (params.order >= 2) {
        const BigInt d3 = BigInt(2 * m + 3) * (2 * m + 3) * (2 * m + 3) * (2 * m + 5);
        const BigInt d2 = BigInt(2 * m + 3) * (2 * m + 3) * (2 * m + 5);
        // y^2/2 sin^4 + sin^2/(2 (2m+3)^3 (2m+5)) - sin^4/(4 (2m+3)^2 (2m+5))
        poly.term(2) = (kS2 * kS2).scaled(y * y * Rational(1, 2)) + kS2.scaled(Rational(BigInt(1), 2 * d3)) +
                       (kS2 * kS2).scaled(Rational(BigInt(-1), 4 * d2));
    }
    TrigForm psi(2 * m + 1, std::move(poly));
    TrigForm theta_form(psi.twice_exponent() - 1, psi.poly());
    return Eigenstate{0, ground_energy(params), std::move(psi), std::move(theta_form)};
}

double ground_state_closed_eval(const ProblemParams& params, double theta, double alpha) {
    const int m = params.m;
    const double s2 = std::pow(std::sin(theta), 2);
    double exponent = -alpha * s2 / (4.0 * m + 6.0);
    if (params.order >= 2) {
        const double d3 = std::pow(2.0 * m + 3.0, 3) * (2.0 * m + 5.0);
        const double d2 = std::pow(2.0 * m + 3.0, 2) * (2.0 * m + 5.0);
        exponent += alpha * alpha * (s2 / (2.0 * d3) - s2 * s2 / (4.0 * d2));
    }
    return std::pow(std::sin(theta), m + 0.5) * std::exp(exponent);
}

Rational ladder_a(int m, int k) {
    if (k < 1) throw std::invalid_argument("ladder_a: k must be >= 1");
    return Rational(2 * m + 2 * k - 1, 2 * m + 1);
}

Rational ladder_b_iterated(int m, int k) {
    if (k < 1) throw std::invalid_argument("ladder_b_iterated: k must be >= 1");
    Rational b(1);
    for (int j = 1; j < k; ++j) {
        const Rational u = Rational(2 * m + 1) * ladder_a(m, j);  // (2m+1) A_j
        b = (u - Rational(2)) / (u + Rational(4)) * b;
    }
    return b;
}

Rational ladder_b_closed(int m, int k) {
    if (k < 1) throw std::invalid_argument("ladder_b_closed: k must be >= 1");
    const BigInt num = BigInt(2 * m - 1) * (2 * m + 1) * (2 * m + 3);
    const BigInt den = BigInt(2 * k + 2 * m - 3) * (2 * k + 2 * m - 1) * (2 * k + 2 * m + 1);
    return Rational(num, den);
}

std::vector<LadderParams> ladder_sequence(const ProblemParams& params, int n) {
    if (n < 0) throw std::invalid_argument("ladder_sequence: n must be >= 0");
    std::vector<LadderParams> seq;
    seq.reserve(static_cast<std::size_t>(n) + 1);
    Rational b(1);
    for (int k = 1; k <= n + 1; ++k) {
        seq.push_back(LadderParams{k, ladder_a(params.m, k), b});
        const Rational u = Rational(2 * params.m + 1) * ladder_a(params.m, k);
        b = (u - Rational(2)) / (u + Rational(4)) * b;
    }
    return seq;
}

EnergySeries ladder_remainder(const ProblemParams& params, int k) {
    const int m = params.m;
    const Rational constant = Rational(2 * m + 1) * ladder_a(m, k) + Rational(1);
    const Rational linear =
        -(ladder_b_iterated(m, k + 1) + ladder_b_iterated(m, k)) * Rational(1, 2 * m + 3);
    return EnergySeries({constant, linear});
}

EnergySeries energy_level(const ProblemParams& params, int n) {
    if (n < 0) throw std::invalid_argument("energy_level: n must be >= 0");
    const int m = params.m;

    // Route 1: ground terms plus the explicit sum of shape-invariance
    // remainders, E = m(m+1) - alpha/(2m+3) + sum_{k=1..n} R_k.
    Rational c0(static_cast<long long>(m) * (m + 1));
    Rational c1(-1, 2 * m + 3);
    Rational b_k(1);
    for (int k = 1; k <= n; ++k) {
        const Rational u = Rational(2 * m + 1) * ladder_a(m, k);
        const Rational b_next = (u - Rational(2)) / (u + Rational(4)) * b_k;
        c0 += u + Rational(1);
        c1 -= (b_next + b_k) * Rational(1, 2 * m + 3);
        b_k = b_next;
    }

    // Route 2: the l-form with l = m + n,
    //   l(l+1) - (alpha/2) [1 - (2m-1)(2m+1)/((2l-1)(2l+3))].
    const int l = m + n;
    const Rational l0(static_cast<long long>(l) * (l + 1));
    const Rational l1 = Rational(-1, 2) *
                        (Rational(1) - Rational(BigInt(2 * m - 1) * (2 * m + 1), BigInt(2 * l - 1) * (2 * l + 3)));

    if (c0 != l0 || c1 != l1)
        throw std::logic_error("energy_level: remainder-sum and l-form routes disagree");

    std::vector<Rational> coeffs{std::move(c0), std::move(c1)};
    if (params.order >= 2) {
        if (n != 0)
            throw std::invalid_argument("energy_level: order 2 is only available for the ground state");
        coeffs.push_back(ground_energy(params).coeff(2));
    }
    return EnergySeries(std::move(coeffs));
}

RaisingOperator raising_operator(const ProblemParams& params, int k) {
    const int m = params.m;
    // The multiplicative part of -d/dtheta + W(A_k, B_k):
    //   A_k W0 = -(m+1/2) A_k cot = sin^{-1} [-(m+1/2) A_k cos]
    //   alpha B_k W1 = (alpha/(4m+6)) B_k sin(2 theta) = alpha sin [(B_k/(2m+3)) cos]
    const TrigForm cot =
        TrigForm::single(params.order, -2, 0, kU.scaled(-half_integer(m) * ladder_a(m, k)));
    const TrigForm sin2 =
        TrigForm::single(params.order, 2, 1, kU.scaled(ladder_b_iterated(m, k) * Rational(1, 2 * m + 3)));
    return RaisingOperator{cot, sin2};
}

TrigForm apply_raising(const RaisingOperator& op, const TrigForm& psi) {
    return -psi.derivative() + op.cot_coefficient * psi + op.sin2_coefficient * psi;
}

TrigForm apply_annihilation(const ProblemParams& params, int k, const TrigForm& psi) {
    const RaisingOperator op = raising_operator(params, k);
    return psi.derivative() + op.cot_coefficient * psi + op.sin2_coefficient * psi;
}

TrigForm partner_ground(const ProblemParams& params, int n) {
    const int m = params.m;
    AlphaSeries<CosPoly> poly(params.order);
    poly.term(0) = CosPoly::constant(Rational(1));
    poly.term(1) = kS2.scaled(-ladder_b_iterated(m, n + 1) * Rational(1, 4 * m + 6));
    // exponent (m + 1/2) A_{n+1} = m + n + 1/2
    return TrigForm(2 * (m + n) + 1, std::move(poly));
}

double partner_ground_closed_eval(const ProblemParams& params, int k, double theta, double alpha) {
    const int m = params.m;
    const double exponent = (m + 0.5) * ladder_a(m, k).to_double();
    const double s2 = std::pow(std::sin(theta), 2);
    const double bk = ladder_b_iterated(m, k).to_double();
    return std::pow(std::sin(theta), exponent) * std::exp(-alpha * bk * s2 / (4.0 * m + 6.0));
}

Eigenstate excited_state(const ProblemParams& params, int n) {
    if (n < 0) throw std::invalid_argument("excited_state: n must be >= 0");
    if (params.order != 1) throw std::invalid_argument("excited_state: only order 1 is defined");

    TrigForm psi = partner_ground(params, n);
    for (int k = n; k >= 1; --k) psi = apply_raising(raising_operator(params, k), psi);

    TrigForm theta_form(psi.twice_exponent() - 1, psi.poly());
    return Eigenstate{n, energy_level(params, n), std::move(psi), std::move(theta_form)};
}

double normalization_constant(const TrigForm& psi, double alpha) {
    const QuadratureRule& rule = theta_rule(256);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = psi.eval(rule.nodes[i], alpha);
        norm2 += rule.weights[i] * v * v;
    }
    if (!(norm2 > 0.0)) throw std::invalid_argument("normalization_constant: zero norm");
    return 1.0 / std::sqrt(norm2);
}

}  // namespace sphsusy::susy
