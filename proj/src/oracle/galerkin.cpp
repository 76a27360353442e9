#include "sphsusy/oracle/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "sphsusy/oracle/legendre.hpp"

namespace sphsusy::oracle {

namespace {

double coupling_formula(int m, int l) {
    if (l < m) return 0.0;
    const double num = (static_cast<double>(l) + 1.0 - m) * (static_cast<double>(l) + 1.0 + m);
    const double den = (2.0 * l + 1.0) * (2.0 * l + 3.0);
    return std::sqrt(num / den);
}

std::string block_label(int m, double alpha, BlockParity parity, int l_max) {
    std::ostringstream os;
    os << "m=" << m << " alpha=" << alpha << " parity=" << (parity == BlockParity::even ? "even" : "odd")
       << " l_max=" << l_max;
    return os.str();
}

}  // namespace

LegendreBasis::LegendreBasis(int m_, int l_max_) : m(m_), l_max(l_max_) {
    if (m < 0) throw std::invalid_argument("LegendreBasis: m must be non-negative");
    if (l_max < m + 4) throw std::invalid_argument("LegendreBasis: l_max must be at least m + 4");
    coupling.reserve(static_cast<std::size_t>(l_max - m));
    for (int l = m; l < l_max; ++l) coupling.push_back(coupling_formula(m, l));
}

double LegendreBasis::a(int l) const {
    if (l < m) return 0.0;
    if (l < l_max) return coupling[static_cast<std::size_t>(l - m)];
    return coupling_formula(m, l);
}

ConvergenceError::ConvergenceError(int m_, double alpha_, int l_max_reached_, double worst_change_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "oracle failed to converge at m=" << m_ << " alpha=" << alpha_ << ": l_max cap "
             << l_max_reached_ << " reached with eigenvalue change " << worst_change_;
          return os.str();
      }()),
      m(m_),
      alpha(alpha_),
      l_max_reached(l_max_reached_),
      worst_change(worst_change_) {}

SymmetricTridiagonal build_matrix(const LegendreBasis& basis, double alpha, BlockParity parity) {
    const int l_start = basis.m + (parity == BlockParity::even ? 0 : 1);
    SymmetricTridiagonal t;
    for (int l = l_start; l <= basis.l_max; l += 2) {
        const double al = basis.a(l);
        const double alm1 = basis.a(l - 1);
        t.diag.push_back(static_cast<double>(l) * (l + 1) - alpha * (alm1 * alm1 + al * al));
        if (l + 2 <= basis.l_max) t.off.push_back(-alpha * al * basis.a(l + 1));
    }
    return t;
}

std::vector<SpectralSolution> solve(const LegendreBasis& basis, double alpha, std::size_t k) {
    if (2 * k > basis.coupling.size() + 1)
        throw std::invalid_argument("solve: k exceeds half the basis dimension");
    std::vector<SpectralSolution> merged;
    for (BlockParity parity : {BlockParity::even, BlockParity::odd}) {
        const SymmetricTridiagonal t = build_matrix(basis, alpha, parity);
        const std::size_t want = std::min(k, t.size());
        const auto pairs =
            smallest_eigenpairs(t, want, block_label(basis.m, alpha, parity, basis.l_max));
        for (const EigenPair& p : pairs) {
            SpectralSolution sol;
            sol.eigenvalue = p.value;
            sol.coeffs = p.vector;
            sol.parity = parity;
            sol.l_max = basis.l_max;
            sol.residual_estimate = p.residual;
            merged.push_back(std::move(sol));
        }
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const SpectralSolution& a, const SpectralSolution& b) {
                         return a.eigenvalue < b.eigenvalue;
                     });
    merged.resize(std::min(k, merged.size()));
    return merged;
}

double eigenfunction_eval(const SpectralSolution& sol, const LegendreBasis& basis, double theta) {
    if (!(theta > 0.0 && theta < M_PI))
        throw std::domain_error("eigenfunction_eval: theta outside the open interval (0, pi)");
    const double x = std::cos(theta);
    const int l_start = basis.m + (sol.parity == BlockParity::even ? 0 : 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < sol.coeffs.size(); ++j) {
        const int l = l_start + 2 * static_cast<int>(j);
        sum += sol.coeffs[j] * assoc_legendre_norm(basis.m, l) * assoc_legendre(basis.m, l, x);
    }
    return std::sqrt(std::sin(theta)) * sum;
}

std::vector<SpectralSolution> converge(int m, double alpha, std::size_t k) {
    constexpr int kCap = 4096;
    constexpr double kTol = 1e-11;

    int l_max = std::max(32, m + 2 * static_cast<int>(k) + 8);
    std::vector<SpectralSolution> prev = solve(LegendreBasis(m, l_max), alpha, k);
    double worst = std::numeric_limits<double>::infinity();
    while (l_max < kCap) {
        l_max = std::min(2 * l_max, kCap);
        std::vector<SpectralSolution> next = solve(LegendreBasis(m, l_max), alpha, k);
        worst = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            worst = std::max(worst, std::abs(next[i].eigenvalue - prev[i].eigenvalue));
        if (worst < kTol) return next;
        prev = std::move(next);
    }
    throw ConvergenceError(m, alpha, kCap, worst);
}

void write_solution_csv(std::ostream& os, int m, double alpha,
                        const std::vector<SpectralSolution>& solutions, const char* eigenvalue_label) {
    os << "m,n,alpha," << eigenvalue_label << ",l_max,residual\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t n = 0; n < solutions.size(); ++n) {
        const SpectralSolution& s = solutions[n];
        os << m << "," << n << "," << fmt(alpha) << "," << fmt(s.eigenvalue) << "," << s.l_max << ","
           << fmt(s.residual_estimate) << "\n";
    }
}

}  // namespace sphsusy::oracle
