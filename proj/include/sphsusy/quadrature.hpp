#pragma once

#include <cstddef>
#include <vector>

namespace sphsusy {

/// Gauss-Legendre rule on a target interval. Nodes are strictly interior,
/// which keeps endpoint-singular derivatives of half-integer sin powers out
/// of every quadrature in this project.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b], computed by Newton iteration on
/// the Legendre recurrence; nodes accurate to machine precision.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// Cached rule on (0, pi), the integration domain for all wavefunctions.
const QuadratureRule& theta_rule(std::size_t n);

}  // namespace sphsusy
