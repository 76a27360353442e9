#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace sphsusy {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision integer parts.
/// Always stored reduced, denominator > 0. Arithmetic never rounds.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long long n) : value_(n) {}  // NOLINT: implicit by design
    Rational(const BigInt& n) : value_(n) {}

    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0)
            value_ = boost::multiprecision::cpp_rational(-num, -den);
        else
            value_ = boost::multiprecision::cpp_rational(num, den);
    }

    /// Parses "p", "-p" or "p/q" with decimal arbitrary-precision parts.
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

    double to_double() const { return value_.convert_to<double>(); }

    /// "p" when integral, "p/q" otherwise; round-trips through parse().
    std::string to_string() const {
        const BigInt den = denominator();
        if (den == 1) return numerator().str();
        return numerator().str() + "/" + den.str();
    }

    Rational operator-() const { return Rational(-value_); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}

    boost::multiprecision::cpp_rational value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace sphsusy
