#pragma once

#include "sphsusy/cos_poly.hpp"
#include "sphsusy/trig_form.hpp"

namespace sphsusy::oracle {

/// Associated Legendre P_l^m(x), unnormalized, without the Condon-Shortley
/// phase (P_m^m = (2m-1)!! (1-x^2)^{m/2} is positive). Stable upward
/// recurrence in l; relative error below 1e-12 for l <= 100.
double assoc_legendre(int m, int l, double x);

/// Orthonormalization constant N_l with integral over [-1,1] of
/// (N_l P_l^m)^2 equal to one: sqrt((2l+1)(l-m)! / (2 (l+m)!)).
double assoc_legendre_norm(int m, int l);

/// Exact rational polynomial part of P_l^m: the m-th derivative of the
/// Legendre polynomial P_l, so that P_l^m(cos theta) = sin^m theta * poly(cos theta).
CosPoly legendre_derivative_poly(int l, int m);

/// sin^{1/2} P_l^m(cos theta) as an exact form (alpha truncation `order`):
/// sin^{m+1/2} times the rational polynomial part.
TrigForm legendre_trig_form(int l, int m, int order);

}  // namespace sphsusy::oracle
