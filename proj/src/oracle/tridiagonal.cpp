#include "sphsusy/oracle/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sphsusy::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double matrix_scale(const SymmetricTridiagonal& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double row = std::abs(t.diag[i]);
        if (i > 0) row += std::abs(t.off[i - 1]);
        if (i + 1 < t.size()) row += std::abs(t.off[i]);
        s = std::max(s, row);
    }
    return s;
}

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> spectrum_bounds(const SymmetricTridiagonal& t) {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < t.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < t.size()) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

double pivot_floor(const SymmetricTridiagonal& t) {
    double max_off2 = 0.0;
    for (double e : t.off) max_off2 = std::max(max_off2, e * e);
    const double safemin = std::numeric_limits<double>::min();
    return std::max(max_off2 * safemin, safemin);
}

// Solves (T - lambda I) y = x in place by Gaussian elimination with partial
// pivoting specialized to tridiagonal plus one fill-in band.
bool shifted_solve(const SymmetricTridiagonal& t, double lambda, std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0);  // main, super, super2
    std::vector<double> sub(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = t.diag[i] - lambda;
        if (i + 1 < n) {
            b[i] = t.off[i];
            sub[i] = t.off[i];
        }
    }
    const double tiny = pivot_floor(t);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(a[i])) {
            std::swap(a[i], sub[i]);
            std::swap(b[i], a[i + 1]);
            if (i + 2 < n) std::swap(c[i], b[i + 1]);
            std::swap(y[i], y[i + 1]);
        }
        if (std::abs(a[i]) < tiny) a[i] = (a[i] < 0 ? -tiny : tiny);
        const double f = sub[i] / a[i];
        a[i + 1] -= f * b[i];
        if (i + 2 < n) b[i + 1] -= f * c[i];
        y[i + 1] -= f * y[i];
    }
    if (std::abs(a[n - 1]) < tiny) a[n - 1] = (a[n - 1] < 0 ? -tiny : tiny);
    for (std::size_t i = n; i-- > 0;) {
        double v = y[i];
        if (i + 1 < n) v -= b[i] * y[i + 1];
        if (i + 2 < n) v -= c[i] * y[i + 2];
        y[i] = v / a[i];
    }
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& x : v) x /= s;
}

double residual_norm(const SymmetricTridiagonal& t, double lambda, const std::vector<double>& v) {
    const std::size_t n = t.size();
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ti = t.diag[i] * v[i] - lambda * v[i];
        if (i > 0) ti += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) ti += t.off[i] * v[i + 1];
        r2 += ti * ti;
    }
    return std::sqrt(r2);
}

}  // namespace

EigensolveError::EigensolveError(std::string block, std::vector<double> shifts)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "eigensolver failed to converge";
          if (!block.empty()) os << " on block " << block;
          os << " after " << shifts.size() << " shifts";
          if (!shifts.empty()) {
              os << " (last shifts:";
              const std::size_t first = shifts.size() > 5 ? shifts.size() - 5 : 0;
              for (std::size_t i = first; i < shifts.size(); ++i) os << " " << shifts[i];
              os << ")";
          }
          return os.str();
      }()),
      block_(std::move(block)),
      shifts_(std::move(shifts)) {}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
    const double tiny = pivot_floor(t);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
        q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
        if (std::abs(q) < tiny) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& t, std::size_t k) {
    if (k > t.size()) throw std::invalid_argument("smallest_eigenvalues: k exceeds the dimension");
    std::vector<double> values(k);
    auto [lo0, hi0] = spectrum_bounds(t);
    const double scale = std::max({std::abs(lo0), std::abs(hi0), 1.0});
    lo0 -= 4.0 * kEps * scale;  // keep the strict-count invariant at the rim
    hi0 += 4.0 * kEps * scale;
    for (std::size_t j = 0; j < k; ++j) {
        double lo = lo0, hi = hi0;
        // invariant: count(lo) <= j < count(hi)
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count(t, mid) > j)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= 2.0 * kEps * scale) break;
        }
        values[j] = 0.5 * (lo + hi);
    }
    return values;
}

std::vector<EigenPair> smallest_eigenpairs(const SymmetricTridiagonal& t, std::size_t k,
                                           const std::string& block_label) {
    const std::size_t n = t.size();
    const std::vector<double> values = smallest_eigenvalues(t, k);
    const double scale = std::max(matrix_scale(t), 1.0);
    const double good_residual = 64.0 * kEps * scale * std::sqrt(static_cast<double>(n));

    std::vector<EigenPair> pairs;
    pairs.reserve(k);
    bool need_fallback = false;
    for (std::size_t j = 0; j < k && !need_fallback; ++j) {
        const double lambda = values[j];
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
        double res = std::numeric_limits<double>::max();
        for (int iter = 0; iter < 8; ++iter) {
            if (!shifted_solve(t, lambda, v)) {
                // deterministic perturbed restart
                for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
                if (!shifted_solve(t, lambda + 8.0 * kEps * scale, v)) break;
            }
            // Re-orthogonalize inside eigenvalue clusters so repeated or
            // nearly repeated eigenvalues get independent vectors.
            for (const EigenPair& prev : pairs) {
                if (std::abs(prev.value - lambda) > 1e-6 * scale) continue;
                const double dot = std::inner_product(v.begin(), v.end(), prev.vector.begin(), 0.0);
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev.vector[i];
            }
            normalize(v);
            res = residual_norm(t, lambda, v);
            if (res <= good_residual) break;
        }
        if (res > 1e-8 * scale) {
            need_fallback = true;
            break;
        }
        // Rayleigh-quotient polish: with an accurate vector this sharpens
        // the bisection value to machine precision.
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ti = t.diag[i] * v[i];
            if (i > 0) ti += t.off[i - 1] * v[i - 1];
            if (i + 1 < n) ti += t.off[i] * v[i + 1];
            rq += v[i] * ti;
        }
        double value = lambda;
        if (std::abs(rq - lambda) <= 256.0 * kEps * scale) {
            value = rq;
            res = residual_norm(t, value, v);
        }
        // deterministic sign: largest-magnitude component positive
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        if (v[imax] < 0.0)
            for (double& x : v) x = -x;
        pairs.push_back(EigenPair{value, std::move(v), res});
    }

    if (!need_fallback) return pairs;

    std::vector<EigenPair> full = ql_eigensystem(t, block_label);
    full.resize(k);
    return full;
}

std::vector<EigenPair> ql_eigensystem(const SymmetricTridiagonal& t, const std::string& block_label) {
    const std::size_t n = t.size();
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off[i];

    std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) z[i][i] = 1.0;

    std::vector<double> shifts;
    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd + std::numeric_limits<double>::min()) break;
            }
            if (m == l) break;
            if (iter >= 50) throw EigensolveError(block_label, shifts);

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
            shifts.push_back(g);
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow_split = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_split = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for (std::size_t row = 0; row < n; ++row) {
                    f = z[row][i + 1];
                    z[row][i + 1] = s * z[row][i] + c * f;
                    z[row][i] = c * z[row][i] - s * f;
                }
            }
            if (underflow_split) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    std::vector<EigenPair> pairs(n);
    for (std::size_t j = 0; j < n; ++j) {
        EigenPair& p = pairs[j];
        p.value = d[idx[j]];
        p.vector.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.vector[i] = z[i][idx[j]];
        normalize(p.vector);
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(p.vector[i]) > std::abs(p.vector[imax])) imax = i;
        if (p.vector[imax] < 0.0)
            for (double& x : p.vector) x = -x;
        p.residual = residual_norm(t, p.value, p.vector);
    }
    return pairs;
}

}  // namespace sphsusy::oracle
