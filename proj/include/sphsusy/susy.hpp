#pragma once

#include <vector>

#include "sphsusy/alpha_series.hpp"
#include "sphsusy/trig_form.hpp"

namespace sphsusy::susy {

/// One spheroidal angular problem instance. The azimuthal index m is a
/// concrete non-negative integer; alpha is the spheroidal parameter (either
/// sign); order is the retained power of alpha (2 only for the ground state).
struct ProblemParams {
    int m = 0;
    double alpha = 0.0;
    int order = 1;

    ProblemParams(int m_, double alpha_, int order_ = 1);
};

/// Shape-invariance parameter pair at ladder step k (1-based), A_1 = B_1 = 1.
struct LadderParams {
    int k = 1;
    Rational a;
    Rational b;
};

/// Truncated energy expansion sum_k coeffs[k] alpha^k with exact coefficients.
class EnergySeries {
public:
    explicit EnergySeries(std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    double eval(double alpha) const;

    friend bool operator==(const EnergySeries& x, const EnergySeries& y) { return x.coeffs_ == y.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

/// Bound state in Schroedinger form: psi vanishes at theta = 0, pi and its
/// alpha^0 part is sin^{m+1/2} times a degree-n polynomial in cos(theta).
/// theta_form is psi / sin^{1/2}, the solution of the original equation.
/// Wavefunctions are unnormalized; see normalization_constant.
struct Eigenstate {
    int n = 0;
    EnergySeries energy;
    TrigForm wavefunction;
    TrigForm theta_form;
};

/// V(theta) = -1/4 - alpha cos^2 + (m^2 - 1/4)/sin^2, as an exact form.
TrigForm potential(const ProblemParams& params);

/// Superpotential terms [W0, W1, (W2)] as alpha-free forms:
///   W0 = -(m + 1/2) cot, W1 = sin cos/(2m+3),
///   W2 = -sin cos/((2m+3)^3 (2m+5)) + sin^3 cos/((2m+3)^2 (2m+5)).
AlphaSeries<TrigForm> superpotential(const ProblemParams& params);

/// The terms combined into a single form sum_k alpha^k W_k.
TrigForm superpotential_form(const ProblemParams& params);

/// Ground energy coefficients: m(m+1), -1/(2m+3), and at order 2 the
/// constant -(2m+2)/((2m+3)^3 (2m+5)) forced by the order-2 closure.
EnergySeries ground_energy(const ProblemParams& params);

/// (W^2 - W') - (V - E) split per alpha order; identically zero order by
/// order exactly when E is the ground EnergySeries.
AlphaSeries<TrigForm> riccati_residual(const ProblemParams& params, const EnergySeries& energy);

/// Ground state from the truncated expansion of
/// sin^{m+1/2} exp[-alpha sin^2/(4m+6)] (times the order-2 exponential).
Eigenstate ground_state(const ProblemParams& params);

/// Closed (non-truncated) exponential form of the ground state, numeric only.
double ground_state_closed_eval(const ProblemParams& params, double theta, double alpha);

/// A_k in closed form: (m + 1/2) A_k = m + 1/2 + (k - 1).
Rational ladder_a(int m, int k);

/// B_{k+1} = ((2m+1)A_k - 2)/((2m+1)A_k + 4) B_k, iterated from B_1 = 1.
Rational ladder_b_iterated(int m, int k);

/// (2m-1)(2m+1)(2m+3) / ((2k+2m-3)(2k+2m-1)(2k+2m+1)).
Rational ladder_b_closed(int m, int k);

/// Ladder parameters for steps k = 1..n+1.
std::vector<LadderParams> ladder_sequence(const ProblemParams& params, int n);

/// Shape-invariance remainder R_k = (2m+1)A_k + 1 - alpha (B_{k+1}+B_k)/(2m+3)
/// as the coefficient pair [constant, alpha].
EnergySeries ladder_remainder(const ProblemParams& params, int k);

/// E_n = l(l+1) - (alpha/2)[1 - (2m-1)(2m+1)/((2l-1)(2l+3))] with l = m + n,
/// computed independently through the remainder sum and through the l-form;
/// the two routes are asserted exactly equal. Order-2 ground gains the E02
/// coefficient.
EnergySeries energy_level(const ProblemParams& params, int n);

/// Raising operator -d/dtheta + W(A_k, B_k) with W = A_k W0 + alpha B_k W1,
/// held as its two multiplicative coefficient forms: the cot term
/// -(m+1/2) A_k cot and the alpha-order-1 term (alpha/(4m+6)) B_k sin(2 theta).
struct RaisingOperator {
    TrigForm cot_coefficient;
    TrigForm sin2_coefficient;
};

RaisingOperator raising_operator(const ProblemParams& params, int k);

TrigForm apply_raising(const RaisingOperator& op, const TrigForm& psi);

/// Annihilation counterpart +d/dtheta + W(A_k, B_k) applied to psi.
TrigForm apply_annihilation(const ProblemParams& params, int k, const TrigForm& psi);

/// Partner ground state sin^{(m+1/2)A_{n+1}} [1 - alpha B_{n+1} sin^2/(4m+6)].
TrigForm partner_ground(const ProblemParams& params, int n);

/// Numeric closed-exponential form of the step-k partner ground state.
double partner_ground_closed_eval(const ProblemParams& params, int k, double theta, double alpha);

/// nth excited state built by applying the k = n..1 raising operators to the
/// step-(n+1) partner ground state. Requires order 1.
Eigenstate excited_state(const ProblemParams& params, int n);

/// 1/sqrt(integral psi^2 dtheta) over (0, pi) by 256-node Gauss-Legendre.
double normalization_constant(const TrigForm& psi, double alpha);

}  // namespace sphsusy::susy
