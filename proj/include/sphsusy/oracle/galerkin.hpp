#pragma once

#include <iosfwd>
#include <vector>

#include "sphsusy/oracle/tridiagonal.hpp"

namespace sphsusy::oracle {

/// Orthonormal associated-Legendre basis P~_l^m, l = m..l_max, with the
/// x-recurrence coupling a_l = sqrt(((l+1-m)(l+1+m)) / ((2l+1)(2l+3)))
/// cached for l = m..l_max-1.
struct LegendreBasis {
    int m = 0;
    int l_max = 0;
    std::vector<double> coupling;

    LegendreBasis(int m_, int l_max_);

    /// a_l; zero below l = m, computed directly at or above l_max - 1.
    double a(int l) const;
};

enum class BlockParity { even, odd };  // parity of l - m

/// One converged eigenpair of the projected spheroidal operator.
struct SpectralSolution {
    double eigenvalue = 0.0;
    std::vector<double> coeffs;  // over l = m + parity, m + parity + 2, ...
    BlockParity parity = BlockParity::even;
    int l_max = 0;
    double residual_estimate = 0.0;
};

/// Thrown when l_max doubling hits its cap without eigenvalue convergence.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(int m, double alpha, int l_max_reached, double worst_change);
    int m;
    double alpha;
    int l_max_reached;
    double worst_change;
};

/// Galerkin block of -d/dx[(1-x^2)d/dx] + m^2/(1-x^2) - alpha x^2 for one
/// parity: diagonal l(l+1) - alpha (a_{l-1}^2 + a_l^2), off-diagonal
/// -alpha a_l a_{l+1} between l and l+2.
SymmetricTridiagonal build_matrix(const LegendreBasis& basis, double alpha, BlockParity parity);

/// The k lowest eigenpairs merged across both parity blocks, ascending.
std::vector<SpectralSolution> solve(const LegendreBasis& basis, double alpha, std::size_t k);

/// Psi(theta) = sin^{1/2} sum_l c_l N_l P_l^m(cos theta); unit L^2 norm on
/// (0, pi) by construction. theta must lie in the open interval.
double eigenfunction_eval(const SpectralSolution& sol, const LegendreBasis& basis, double theta);

/// Doubles l_max from 32 until all k eigenvalues move by less than 1e-11,
/// capped at l_max = 4096.
std::vector<SpectralSolution> converge(int m, double alpha, std::size_t k);

/// CSV rows m,n,alpha,eigenvalue,l_max,residual (RFC-4180, header included).
void write_solution_csv(std::ostream& os, int m, double alpha,
                        const std::vector<SpectralSolution>& solutions,
                        const char* eigenvalue_label = "eigenvalue");

}  // namespace sphsusy::oracle
