#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sphsusy/rational.hpp"

namespace sphsusy::verify {

// Pass thresholds, pinned. Slope floors sit slightly below the asymptotic
// orders to absorb fit noise near the error floor.
inline constexpr double kNoiseFloor = 1e-13;
inline constexpr double kFirstOrderSlopeMin = 1.9;
inline constexpr double kSecondOrderSlopeMin = 2.8;
inline constexpr double kDeficitSlopeMin = 3.0;
inline constexpr double kResidualSlopeMin = 1.9;
inline constexpr double kSpotAlpha = 0.1;
inline constexpr double kFirstOrderSpotBound = 5e-3;
inline constexpr double kSecondOrderSpotBound = 1e-4;
inline constexpr double kAlpha0DeficitBound = 1e-10;
inline constexpr double kAlpha0EnergyBound = 1e-10;

/// Geometric sweep 0.0125 .. 0.4, ratio 2; log-spaced so slope fits are
/// well conditioned.
std::vector<double> default_alpha_sweep();

/// Least-squares slope/intercept on (log x, log y), dropping y below the
/// noise floor. With fewer than two usable points the data is entirely at
/// the floor and the slope is reported as +99 (better than measurable).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points_used = 0;
};
FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                     double floor = kNoiseFloor);

struct ScalingReport {
    int m = 0;
    int n = 0;
    int order = 1;
    std::vector<double> alphas;
    std::vector<double> errors;
    double fitted_slope = 0.0;
    double fitted_intercept = 0.0;
};

struct OverlapReport {
    int m = 0;
    int n = 0;
    double alpha = 0.0;
    double overlap_deficit = 0.0;  // 1 - <psi_pert, psi_oracle>^2, both unit
    double ode_residual = 0.0;     // ||(-d^2 + V - E) psi_pert|| / ||psi_pert||
};

struct IdentityCheck {
    std::string name;
    bool pass = true;
    std::string counterexample;  // empty when pass
};

struct ReductionEntry {
    int m = 0;
    int n = 0;
    bool pass = false;
    Rational ratio;  // psi_n(alpha=0) / (sin^{1/2} P_{m+n}^m)
};

/// Test-only fault injection for the identity ledger.
enum class Mutation { none, b_recursion_numerator };

/// Thrown when adjacent oracle levels sit too close to the perturbative
/// shift for index pairing to be trustworthy.
class PairingError : public std::runtime_error {
public:
    explicit PairingError(const std::string& what) : std::runtime_error(what) {}
};

/// |E_pert(order) - E_oracle| over the sweep, with the log-log fit.
ScalingReport eigenvalue_scaling(int m, int n, const std::vector<double>& alphas, int order = 1);

/// Overlap deficit and ODE residual of the order-1 state against the oracle,
/// 512-node Gauss-Legendre quadrature by default.
OverlapReport eigenfunction_overlap(int m, int n, double alpha, std::size_t quad_nodes = 512);

/// Exact-arithmetic ledger: Riccati closure order by order, closed-form
/// B_{n+1} against the iterated recursion, the telescoped B-sum identity,
/// and agreement of the two energy constructions. Failures carry the first
/// counterexample.
std::vector<IdentityCheck> identity_suite(int m_max, int n_max, Mutation mutation = Mutation::none);

/// Exact alpha=0 reduction of every ladder-built state to a rational
/// multiple of sin^{1/2} P_{m+n}^m(cos theta).
std::vector<ReductionEntry> legendre_reduction(int m_max, int n_max);

struct VerifyConfig {
    int m_max = 10;
    int n_max = 50;
    int reduction_m_max = 5;
    int reduction_n_max = 5;
    int scaling_m_max = 3;
    int scaling_n_max = 3;
    int overlap_anchor_max = 5;
    std::vector<double> alphas = default_alpha_sweep();
    Mutation mutation = Mutation::none;
    unsigned threads = 0;  // 0 = SPHESUSY_THREADS or hardware default
};

struct VerifyResult {
    bool pass = false;
    nlohmann::json report;  // schema 1, see write_report_files
};

VerifyResult run_full_verification(const VerifyConfig& config);

/// Writes report.json and report.csv (flat RFC-4180 table) into `directory`.
/// Both files are byte-deterministic for a fixed config.
void write_report_files(const VerifyResult& result, const std::string& directory);

}  // namespace sphsusy::verify
