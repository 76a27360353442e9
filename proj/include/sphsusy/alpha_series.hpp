#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphsusy/rational.hpp"

namespace sphsusy {

/// Truncated power series in the perturbation parameter alpha.
/// Holds exactly order+1 payload terms; every ring operation discards
/// powers above the truncation order, i.e. works mod alpha^{order+1}.
template <typename T>
class AlphaSeries {
public:
    explicit AlphaSeries(int order) : terms_(static_cast<std::size_t>(check_order(order)) + 1) {}

    AlphaSeries(int order, std::vector<T> terms) : terms_(std::move(terms)) {
        check_order(order);
        if (terms_.size() != static_cast<std::size_t>(order) + 1)
            throw std::invalid_argument("AlphaSeries: term count does not match order");
    }

    int order() const { return static_cast<int>(terms_.size()) - 1; }

    const T& term(int k) const { return terms_.at(static_cast<std::size_t>(k)); }
    T& term(int k) { return terms_.at(static_cast<std::size_t>(k)); }
    const std::vector<T>& terms() const { return terms_; }

    bool is_zero() const {
        for (const T& t : terms_)
            if (!t.is_zero()) return false;
        return true;
    }

    friend AlphaSeries operator+(const AlphaSeries& a, const AlphaSeries& b) {
        require_same_order(a, b);
        AlphaSeries r(a.order());
        for (int k = 0; k <= a.order(); ++k) r.term(k) = a.term(k) + b.term(k);
        return r;
    }

    friend AlphaSeries operator-(const AlphaSeries& a, const AlphaSeries& b) {
        require_same_order(a, b);
        AlphaSeries r(a.order());
        for (int k = 0; k <= a.order(); ++k) r.term(k) = a.term(k) - b.term(k);
        return r;
    }

    friend AlphaSeries operator*(const AlphaSeries& a, const AlphaSeries& b) {
        require_same_order(a, b);
        AlphaSeries r(a.order());
        for (int i = 0; i <= a.order(); ++i)
            for (int j = 0; i + j <= a.order(); ++j) r.term(i + j) = r.term(i + j) + a.term(i) * b.term(j);
        return r;
    }

    /// Multiplication by alpha^shift inside the truncated ring; top terms fall off.
    AlphaSeries shifted_up(int shift) const {
        if (shift < 0) throw std::invalid_argument("AlphaSeries: negative shift");
        AlphaSeries r(order());
        for (int k = 0; k + shift <= order(); ++k) r.term(k + shift) = term(k);
        return r;
    }

    /// Re-truncates (or zero-pads) to a new order.
    AlphaSeries with_order(int new_order) const {
        AlphaSeries r(new_order);
        for (int k = 0; k <= std::min(order(), new_order); ++k) r.term(k) = term(k);
        return r;
    }

    friend bool operator==(const AlphaSeries& a, const AlphaSeries& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const AlphaSeries& a, const AlphaSeries& b) { return !(a == b); }

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("AlphaSeries: negative order");
        return order;
    }

    static void require_same_order(const AlphaSeries& a, const AlphaSeries& b) {
        if (a.order() != b.order()) throw std::invalid_argument("AlphaSeries: truncation order mismatch");
    }

    std::vector<T> terms_;
};

}  // namespace sphsusy
