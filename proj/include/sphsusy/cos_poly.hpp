#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sphsusy/rational.hpp"

namespace sphsusy {

/// Polynomial in u = cos(theta) with exact rational coefficients.
/// Coefficient j multiplies u^j. Trailing zeros are stripped; the zero
/// polynomial has an empty coefficient list.
class CosPoly {
public:
    CosPoly() = default;

    explicit CosPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    static CosPoly constant(Rational c) { return CosPoly({std::move(c)}); }

    static CosPoly monomial(int degree, Rational coeff) {
        std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
        c.back() = std::move(coeff);
        return CosPoly(std::move(c));
    }

    /// 1 - u^2, the sin^2(theta) factor in the u variable.
    static CosPoly one_minus_u2() { return CosPoly({Rational(1), Rational(0), Rational(-1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational coeff(int j) const {
        if (j < 0 || j >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<std::size_t>(j)];
    }

    CosPoly operator-() const {
        std::vector<Rational> c(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = -coeffs_[j];
        return CosPoly(std::move(c));
    }

    friend CosPoly operator+(const CosPoly& a, const CosPoly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(static_cast<int>(j)) + b.coeff(static_cast<int>(j));
        return CosPoly(std::move(c));
    }

    friend CosPoly operator-(const CosPoly& a, const CosPoly& b) { return a + (-b); }

    friend CosPoly operator*(const CosPoly& a, const CosPoly& b) {
        if (a.is_zero() || b.is_zero()) return CosPoly();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return CosPoly(std::move(c));
    }

    CosPoly scaled(const Rational& s) const {
        if (s.is_zero()) return CosPoly();
        std::vector<Rational> c(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j] * s;
        return CosPoly(std::move(c));
    }

    /// d/du.
    CosPoly derivative() const {
        if (coeffs_.size() <= 1) return CosPoly();
        std::vector<Rational> c(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j) c[j - 1] = coeffs_[j] * Rational(static_cast<long long>(j));
        return CosPoly(std::move(c));
    }

    /// Horner evaluation at a double argument.
    double eval(double u) const {
        double v = 0.0;
        for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * u + coeffs_[j].to_double();
        return v;
    }

    Rational eval_exact(const Rational& u) const {
        Rational v(0);
        for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * u + coeffs_[j];
        return v;
    }

    bool divisible_by_one_minus_u2() const {
        if (is_zero()) return true;
        CosPoly q, r;
        divmod_one_minus_u2(q, r);
        return r.is_zero();
    }

    /// Exact quotient by (1 - u^2); throws if the division leaves a remainder.
    CosPoly divide_one_minus_u2() const {
        if (is_zero()) return CosPoly();
        CosPoly q, r;
        divmod_one_minus_u2(q, r);
        if (!r.is_zero()) throw std::invalid_argument("CosPoly: not divisible by (1 - u^2)");
        return q;
    }

    CosPoly multiply_one_minus_u2() const { return *this * one_minus_u2(); }

    friend bool operator==(const CosPoly& a, const CosPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const CosPoly& a, const CosPoly& b) { return !(a == b); }

private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    // P = (1 - u^2) Q + (r1 u + r0); coefficients satisfy p_k = q_k - q_{k-2}.
    void divmod_one_minus_u2(CosPoly& q, CosPoly& r) const {
        const int d = degree();
        if (d < 2) {
            q = CosPoly();
            r = *this;
            return;
        }
        std::vector<Rational> qc(static_cast<std::size_t>(d) - 1);
        for (int k = d; k >= 2; --k) {
            const Rational qk = (k + 2 <= d) ? qc[static_cast<std::size_t>(k)] : Rational(0);
            qc[static_cast<std::size_t>(k - 2)] = qk - coeff(k);
        }
        q = CosPoly(qc);
        std::vector<Rational> rc(2);
        rc[0] = coeff(0) - (qc.empty() ? Rational(0) : qc[0]);
        rc[1] = coeff(1) - (qc.size() > 1 ? qc[1] : Rational(0));
        r = CosPoly(std::move(rc));
    }

    std::vector<Rational> coeffs_;
};

}  // namespace sphsusy
