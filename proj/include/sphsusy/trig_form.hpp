#pragma once

#include <string>

#include "sphsusy/alpha_series.hpp"
#include "sphsusy/cos_poly.hpp"

namespace sphsusy {

/// Closed algebra of expressions sin^p(theta) * sum_k alpha^k P_k(cos theta)
/// with half-integer p (stored doubled) and exact rational polynomial
/// coefficients. Canonical form: common (1 - cos^2) factors across all alpha
/// orders are absorbed into the sin exponent, and the zero form is stored
/// with exponent 0. Two forms of equal truncation order represent the same
/// function iff their canonical representations are identical.
class TrigForm {
public:
    /// The zero form of truncation order 0.
    TrigForm() : poly_(0) {}

    /// Canonicalizes on construction.
    TrigForm(int twice_exponent, AlphaSeries<CosPoly> poly);

    static TrigForm zero(int order) { return TrigForm(0, AlphaSeries<CosPoly>(order)); }

    static TrigForm constant(int order, const Rational& c) {
        AlphaSeries<CosPoly> s(order);
        s.term(0) = CosPoly::constant(c);
        return TrigForm(0, s);
    }

    /// sin^{twice_exponent/2} * poly(cos theta) at a single alpha order.
    static TrigForm single(int order, int twice_exponent, int alpha_order, CosPoly poly);

    int twice_exponent() const { return twice_exponent_; }
    int order() const { return poly_.order(); }
    const AlphaSeries<CosPoly>& poly() const { return poly_; }
    const CosPoly& alpha_coeff(int k) const { return poly_.term(k); }

    bool is_zero() const { return poly_.is_zero(); }

    TrigForm operator-() const;
    TrigForm scaled(const Rational& s) const;

    /// Sum with sin-exponent unification. Operands must share the truncation
    /// order and belong to the same half-integer family (doubled exponents
    /// congruent mod 4); zero forms are compatible with everything.
    friend TrigForm operator+(const TrigForm& a, const TrigForm& b);
    friend TrigForm operator-(const TrigForm& a, const TrigForm& b);

    /// Product in the truncated alpha ring; exponents add.
    friend TrigForm operator*(const TrigForm& a, const TrigForm& b);

    /// Exact d/dtheta. The result lives one sin power below the operand.
    TrigForm derivative() const;

    /// Multiplies by alpha^shift inside the truncated ring.
    TrigForm alpha_shifted(int shift) const { return TrigForm(twice_exponent_, poly_.shifted_up(shift)); }

    /// Re-truncates or zero-pads the alpha order.
    TrigForm with_order(int new_order) const { return TrigForm(twice_exponent_, poly_.with_order(new_order)); }

    /// The alpha^k coefficient as an order-0 form.
    TrigForm alpha_part(int k) const {
        AlphaSeries<CosPoly> s(0);
        s.term(0) = poly_.term(k);
        return TrigForm(twice_exponent_, s);
    }

    /// Numeric value at theta in the open interval (0, pi) for a given alpha.
    double eval(double theta, double alpha) const;

    /// Human-readable rendering, e.g. "sin^{1/2}(th) * [1 + a*(1/3*cos(th))]".
    std::string to_text() const;

    friend bool operator==(const TrigForm& a, const TrigForm& b) {
        return a.order() == b.order() && a.twice_exponent_ == b.twice_exponent_ && a.poly_ == b.poly_;
    }
    friend bool operator!=(const TrigForm& a, const TrigForm& b) { return !(a == b); }

private:
    void canonicalize();

    int twice_exponent_ = 0;
    AlphaSeries<CosPoly> poly_;
};

inline TrigForm trig_add(const TrigForm& a, const TrigForm& b) { return a + b; }
inline TrigForm trig_mul(const TrigForm& a, const TrigForm& b) { return a * b; }
inline TrigForm trig_diff(const TrigForm& a) { return a.derivative(); }
inline double trig_eval(const TrigForm& a, double theta, double alpha) { return a.eval(theta, alpha); }
inline bool trig_equal_zero(const TrigForm& a) { return a.is_zero(); }

}  // namespace sphsusy
