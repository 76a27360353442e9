#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphsusy::oracle {

/// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
/// rows i and i+1.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

/// Thrown when an eigensolve exceeds its iteration cap; carries the
/// offending block description and the shift history of the failed sweep.
class EigensolveError : public std::runtime_error {
public:
    EigensolveError(std::string block, std::vector<double> shifts);

    const std::string& block() const { return block_; }
    const std::vector<double>& shift_history() const { return shifts_; }

private:
    std::string block_;
    std::vector<double> shifts_;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;  // ||T v - value v||_2 for the unit vector v
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

/// The k smallest eigenvalues by bisection, ascending, each converged to
/// roughly machine precision relative to the matrix scale.
std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& t, std::size_t k);

/// The k smallest eigenpairs: bisection for values, inverse iteration with
/// cluster re-orthogonalization for vectors, implicit-shift QL as fallback.
/// `block_label` only decorates error messages.
std::vector<EigenPair> smallest_eigenpairs(const SymmetricTridiagonal& t, std::size_t k,
                                           const std::string& block_label = "");

/// Full decomposition by implicit-shift QL with accumulated vectors.
/// Returns pairs sorted ascending. Used as fallback and as a second route
/// in tests.
std::vector<EigenPair> ql_eigensystem(const SymmetricTridiagonal& t,
                                      const std::string& block_label = "");

}  // namespace sphsusy::oracle
