#include "sphsusy/trig_form.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sphsusy {

TrigForm::TrigForm(int twice_exponent, AlphaSeries<CosPoly> poly)
    : twice_exponent_(twice_exponent), poly_(std::move(poly)) {
    canonicalize();
}

TrigForm TrigForm::single(int order, int twice_exponent, int alpha_order, CosPoly poly) {
    AlphaSeries<CosPoly> s(order);
    if (alpha_order < 0 || alpha_order > order)
        throw std::invalid_argument("TrigForm::single: alpha order out of range");
    s.term(alpha_order) = std::move(poly);
    return TrigForm(twice_exponent, s);
}

void TrigForm::canonicalize() {
    if (poly_.is_zero()) {
        twice_exponent_ = 0;
        return;
    }
    for (;;) {
        bool all_divisible = true;
        for (int k = 0; k <= poly_.order() && all_divisible; ++k)
            all_divisible = poly_.term(k).divisible_by_one_minus_u2();
        if (!all_divisible) break;
        for (int k = 0; k <= poly_.order(); ++k) poly_.term(k) = poly_.term(k).divide_one_minus_u2();
        twice_exponent_ += 4;  // (1 - cos^2) = sin^2, i.e. +2 on the exponent p
    }
}

TrigForm TrigForm::operator-() const {
    AlphaSeries<CosPoly> s(order());
    for (int k = 0; k <= order(); ++k) s.term(k) = -poly_.term(k);
    return TrigForm(twice_exponent_, std::move(s));
}

TrigForm TrigForm::scaled(const Rational& c) const {
    AlphaSeries<CosPoly> s(order());
    for (int k = 0; k <= order(); ++k) s.term(k) = poly_.term(k).scaled(c);
    return TrigForm(twice_exponent_, std::move(s));
}

TrigForm operator+(const TrigForm& a, const TrigForm& b) {
    if (a.order() != b.order()) throw std::invalid_argument("TrigForm: alpha truncation order mismatch");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int diff = a.twice_exponent_ - b.twice_exponent_;
    if (diff % 4 != 0) throw std::invalid_argument("incompatible half-integer family");

    const int base = std::min(a.twice_exponent_, b.twice_exponent_);
    auto lowered = [base](const TrigForm& f) {
        AlphaSeries<CosPoly> s = f.poly_;
        for (int steps = (f.twice_exponent_ - base) / 4; steps > 0; --steps)
            for (int k = 0; k <= s.order(); ++k) s.term(k) = s.term(k).multiply_one_minus_u2();
        return s;
    };
    return TrigForm(base, lowered(a) + lowered(b));
}

TrigForm operator-(const TrigForm& a, const TrigForm& b) { return a + (-b); }

TrigForm operator*(const TrigForm& a, const TrigForm& b) {
    if (a.order() != b.order()) throw std::invalid_argument("TrigForm: alpha truncation order mismatch");
    if (a.is_zero() || b.is_zero()) return TrigForm::zero(a.order());
    return TrigForm(a.twice_exponent_ + b.twice_exponent_, a.poly_ * b.poly_);
}

TrigForm TrigForm::derivative() const {
    // d/dtheta [sin^p P(cos)] = sin^{p-1} [p cos P - (1 - cos^2) P'].
    if (is_zero()) return zero(order());
    const Rational p(twice_exponent_, 2);
    AlphaSeries<CosPoly> s(order());
    const CosPoly u = CosPoly::monomial(1, Rational(1));
    for (int k = 0; k <= order(); ++k) {
        const CosPoly& pk = poly_.term(k);
        s.term(k) = (u * pk).scaled(p) - pk.derivative().multiply_one_minus_u2();
    }
    return TrigForm(twice_exponent_ - 2, std::move(s));
}

double TrigForm::eval(double theta, double alpha) const {
    if (!(theta > 0.0 && theta < M_PI))
        throw std::domain_error("TrigForm::eval: theta outside the open interval (0, pi)");
    const double s = std::sin(theta);
    const double u = std::cos(theta);
    double series = 0.0;
    for (int k = order(); k >= 0; --k) series = series * alpha + poly_.term(k).eval(u);
    return std::pow(s, 0.5 * twice_exponent_) * series;
}

namespace {

std::string poly_text(const CosPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j <= p.degree(); ++j) {
        const Rational& c = p.coeff(j);
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const Rational mag = abs(c);
        const bool unit = (mag == Rational(1)) && j > 0;
        if (!unit) os << mag.to_string();
        if (j > 0) {
            if (!unit) os << "*";
            os << "cos(th)";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

std::string exponent_text(int twice_exponent) {
    if (twice_exponent % 2 == 0) return std::to_string(twice_exponent / 2);
    return std::to_string(twice_exponent) + "/2";
}

}  // namespace

std::string TrigForm::to_text() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (twice_exponent_ != 0) os << "sin^{" << exponent_text(twice_exponent_) << "}(th) * ";
    os << "[";
    bool first = true;
    for (int k = 0; k <= order(); ++k) {
        const CosPoly& pk = poly_.term(k);
        if (pk.is_zero() && !(k == 0 && order() == 0)) continue;
        if (!first) os << " + ";
        first = false;
        if (k > 0) {
            os << "a";
            if (k > 1) os << "^" << k;
            os << "*(" << poly_text(pk) << ")";
        } else {
            os << poly_text(pk);
        }
    }
    if (first) os << "0";
    os << "]";
    return os.str();
}

}  // namespace sphsusy
