#include "sphsusy/verify.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sphsusy/format.hpp"
#include "sphsusy/oracle/galerkin.hpp"
#include "sphsusy/oracle/legendre.hpp"
#include "sphsusy/parallel.hpp"
#include "sphsusy/quadrature.hpp"
#include "sphsusy/susy.hpp"

namespace sphsusy::verify {

namespace {

/// B_{k+1} from B_k; the mutation knob perturbs the recursion numerator so
/// the ledger's sensitivity can itself be tested.
Rational next_b(int m, int k, const Rational& b_k, Mutation mutation) {
    const Rational u = Rational(2 * m + 1) * susy::ladder_a(m, k);
    const Rational shift = (mutation == Mutation::b_recursion_numerator) ? Rational(1) : Rational(2);
    return (u - shift) / (u + Rational(4)) * b_k;
}

/// Adjacent oracle levels must be separated by well more than the relative
/// first-order drift, otherwise index pairing is ambiguous.
void check_pairing(int m, double alpha, const std::vector<oracle::SpectralSolution>& sols, int n) {
    for (int i = 0; i <= n && i + 1 < static_cast<int>(sols.size()); ++i) {
        const double gap = sols[static_cast<std::size_t>(i) + 1].eigenvalue -
                           sols[static_cast<std::size_t>(i)].eigenvalue;
        const double c1_lo = susy::energy_level(susy::ProblemParams(m, alpha, 1), i).coeff(1).to_double();
        const double c1_hi =
            susy::energy_level(susy::ProblemParams(m, alpha, 1), i + 1).coeff(1).to_double();
        const double drift = std::abs(c1_hi - c1_lo) * std::abs(alpha);
        if (!(gap > 10.0 * drift)) {
            std::ostringstream os;
            os << "degenerate oracle pairing at m=" << m << " alpha=" << alpha << " levels " << i << ","
               << i + 1 << " (gap " << gap << ", drift " << drift << ")";
            throw PairingError(os.str());
        }
    }
}

}  // namespace

std::vector<double> default_alpha_sweep() { return {0.0125, 0.025, 0.05, 0.1, 0.2, 0.4}; }

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys, double floor) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog: length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw std::invalid_argument("fit_loglog: alphas must be positive");
        if (ys[i] < 0.0) throw std::invalid_argument("fit_loglog: errors must be non-negative");
        if (ys[i] < floor) continue;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    FitResult fit;
    fit.points_used = lx.size();
    if (lx.size() < 2) {
        // everything at the noise floor: sharper than any slope we test for
        fit.slope = 99.0;
        fit.intercept = std::log(floor);
        return fit;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

ScalingReport eigenvalue_scaling(int m, int n, const std::vector<double>& alphas, int order) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0) || (i > 0 && !(alphas[i] > alphas[i - 1])))
            throw std::invalid_argument("eigenvalue_scaling: alphas must be positive and increasing");
    }
    ScalingReport report;
    report.m = m;
    report.n = n;
    report.order = order;
    report.alphas = alphas;
    report.errors.reserve(alphas.size());
    for (double alpha : alphas) {
        const susy::EnergySeries pert = susy::energy_level(susy::ProblemParams(m, alpha, order), n);
        const auto sols = oracle::converge(m, alpha, static_cast<std::size_t>(n) + 2);
        check_pairing(m, alpha, sols, n);
        report.errors.push_back(std::abs(pert.eval(alpha) - sols[static_cast<std::size_t>(n)].eigenvalue));
    }
    const FitResult fit = fit_loglog(report.alphas, report.errors);
    report.fitted_slope = fit.slope;
    report.fitted_intercept = fit.intercept;
    return report;
}

OverlapReport eigenfunction_overlap(int m, int n, double alpha, std::size_t quad_nodes) {
    const susy::ProblemParams params(m, alpha, 1);
    const susy::Eigenstate state = susy::excited_state(params, n);

    const auto sols = oracle::converge(m, alpha, static_cast<std::size_t>(n) + 2);
    check_pairing(m, alpha, sols, n);
    const oracle::SpectralSolution& sol = sols[static_cast<std::size_t>(n)];
    const oracle::LegendreBasis basis(m, sol.l_max);

    const QuadratureRule& rule = theta_rule(quad_nodes);
    const std::size_t nq = rule.nodes.size();
    std::vector<double> fp(nq), fo(nq);
    double np2 = 0.0, no2 = 0.0;
    for (std::size_t i = 0; i < nq; ++i) {
        fp[i] = state.wavefunction.eval(rule.nodes[i], alpha);
        fo[i] = oracle::eigenfunction_eval(sol, basis, rule.nodes[i]);
        np2 += rule.weights[i] * fp[i] * fp[i];
        no2 += rule.weights[i] * fo[i] * fo[i];
    }
    // sign-align at the first antinode of the perturbative state
    std::size_t anti = 0;
    for (std::size_t i = 1; i + 1 < nq; ++i) {
        if (std::abs(fp[i]) > std::abs(fp[i - 1]) && std::abs(fp[i]) >= std::abs(fp[i + 1])) {
            anti = i;
            break;
        }
    }
    const double flip = (fp[anti] * fo[anti] < 0.0) ? -1.0 : 1.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < nq; ++i) dot += rule.weights[i] * fp[i] * flip * fo[i];
    dot /= std::sqrt(np2 * no2);

    OverlapReport report;
    report.m = m;
    report.n = n;
    report.alpha = alpha;
    report.overlap_deficit = std::max(0.0, 1.0 - dot * dot);

    // ODE residual of the truncated state, assembled exactly at a working
    // order high enough that no ring truncation occurs, then evaluated.
    const int work_order = 3;
    const TrigForm psi = state.wavefunction.with_order(work_order);
    const TrigForm v = susy::potential(susy::ProblemParams(m, alpha, 1)).with_order(work_order);
    AlphaSeries<CosPoly> ec(work_order);
    for (int k = 0; k <= state.energy.order(); ++k)
        ec.term(k) = CosPoly::constant(state.energy.coeff(k));
    const TrigForm e(0, std::move(ec));
    const TrigForm residual = -(psi.derivative().derivative()) + (v - e) * psi;

    double r2 = 0.0;
    for (std::size_t i = 0; i < nq; ++i) {
        const double r = residual.eval(rule.nodes[i], alpha);
        r2 += rule.weights[i] * r * r;
    }
    report.ode_residual = std::sqrt(r2 / np2);
    return report;
}

std::vector<IdentityCheck> identity_suite(int m_max, int n_max, Mutation mutation) {
    std::vector<IdentityCheck> ledger;

    // Riccati closure per retained alpha order.
    for (int order_k = 0; order_k <= 2; ++order_k) {
        IdentityCheck check{"riccati_order_" + std::to_string(order_k), true, ""};
        for (int m = 0; m <= m_max && check.pass; ++m) {
            const susy::ProblemParams params(m, 0.0, 2);
            const auto residual = susy::riccati_residual(params, susy::ground_energy(params));
            if (!residual.term(order_k).is_zero()) {
                check.pass = false;
                check.counterexample = "m=" + std::to_string(m);
            }
        }
        ledger.push_back(std::move(check));
    }

    // Closed-form B_{k+1} against the iterated recursion.
    {
        IdentityCheck check{"b_closed_form", true, ""};
        for (int m = 0; m <= m_max && check.pass; ++m) {
            Rational b(1);
            for (int k = 1; k <= n_max + 1; ++k) {
                if (b != susy::ladder_b_closed(m, k)) {
                    check.pass = false;
                    check.counterexample = "m=" + std::to_string(m) + ", k=" + std::to_string(k);
                    break;
                }
                b = next_b(m, k, b, mutation);
            }
        }
        ledger.push_back(std::move(check));
    }

    // Telescoped B-sum: sum_{k=1..n} B_k = [(2m+3)B_1 - (2n+2m+3)B_{n+1}]/4.
    {
        IdentityCheck check{"b_sum_identity", true, ""};
        for (int m = 0; m <= m_max && check.pass; ++m) {
            Rational b(1), b_sum(0);
            const Rational b1 = b;
            for (int n = 1; n <= n_max; ++n) {
                b_sum += b;
                const Rational b_next = next_b(m, n, b, mutation);
                const Rational rhs =
                    (Rational(2 * m + 3) * b1 - Rational(2 * n + 2 * m + 3) * b_next) * Rational(1, 4);
                if (b_sum != rhs) {
                    check.pass = false;
                    check.counterexample = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
                    break;
                }
                b = b_next;
            }
        }
        ledger.push_back(std::move(check));
    }

    // Remainder-sum energy against the l-form.
    {
        IdentityCheck check{"energy_two_forms", true, ""};
        for (int m = 0; m <= m_max && check.pass; ++m) {
            Rational c0(static_cast<long long>(m) * (m + 1));
            Rational c1(-1, 2 * m + 3);
            Rational b(1);
            for (int n = 0; n <= n_max; ++n) {
                if (n > 0) {
                    const Rational b_next = next_b(m, n, b, mutation);
                    c0 += Rational(2 * m + 1) * susy::ladder_a(m, n) + Rational(1);
                    c1 -= (b_next + b) * Rational(1, 2 * m + 3);
                    b = b_next;
                }
                const int l = m + n;
                const Rational l0(static_cast<long long>(l) * (l + 1));
                const Rational l1 =
                    Rational(-1, 2) * (Rational(1) - Rational(BigInt(2 * m - 1) * (2 * m + 1),
                                                              BigInt(2 * l - 1) * (2 * l + 3)));
                if (c0 != l0 || c1 != l1) {
                    check.pass = false;
                    check.counterexample = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
                    break;
                }
            }
        }
        ledger.push_back(std::move(check));
    }

    return ledger;
}

std::vector<ReductionEntry> legendre_reduction(int m_max, int n_max) {
    std::vector<ReductionEntry> entries;
    for (int m = 0; m <= m_max; ++m) {
        for (int n = 0; n <= n_max; ++n) {
            ReductionEntry entry;
            entry.m = m;
            entry.n = n;
            const susy::ProblemParams params(m, 0.0, 1);
            const TrigForm psi0 = susy::excited_state(params, n).wavefunction.alpha_part(0);
            const TrigForm ref = oracle::legendre_trig_form(m + n, m, 0);
            if (!psi0.is_zero() && psi0.twice_exponent() == ref.twice_exponent() &&
                psi0.alpha_coeff(0).degree() == ref.alpha_coeff(0).degree()) {
                const int d = ref.alpha_coeff(0).degree();
                entry.ratio = psi0.alpha_coeff(0).coeff(d) / ref.alpha_coeff(0).coeff(d);
                entry.pass = !entry.ratio.is_zero() && (psi0 - ref.scaled(entry.ratio)).is_zero();
            }
            entries.push_back(std::move(entry));
        }
    }
    return entries;
}

namespace {

struct ScalingCell {
    ScalingReport report;
    double spot_error = -1.0;  // at kSpotAlpha; < 0 means not evaluated
    double anchor_error = 0.0;
    bool slope_pass = false;
    bool spot_pass = true;
    bool anchor_pass = false;
    bool pass = false;
};

ScalingCell run_scaling_cell(int m, int n, int order, const std::vector<double>& alphas,
                             bool with_spot) {
    ScalingCell cell;
    cell.report = eigenvalue_scaling(m, n, alphas, order);
    const double slope_min = order == 1 ? kFirstOrderSlopeMin : kSecondOrderSlopeMin;
    cell.slope_pass = cell.report.fitted_slope >= slope_min;

    if (with_spot) {
        const susy::EnergySeries pert = susy::energy_level(susy::ProblemParams(m, kSpotAlpha, order), n);
        const auto sols = oracle::converge(m, kSpotAlpha, static_cast<std::size_t>(n) + 1);
        cell.spot_error = std::abs(pert.eval(kSpotAlpha) - sols[static_cast<std::size_t>(n)].eigenvalue);
        const double bound = order == 1 ? kFirstOrderSpotBound : kSecondOrderSpotBound;
        cell.spot_pass = cell.spot_error < bound;
    }

    const susy::EnergySeries pert0 = susy::energy_level(susy::ProblemParams(m, 0.0, order), n);
    const auto sols0 = oracle::converge(m, 0.0, static_cast<std::size_t>(n) + 1);
    cell.anchor_error = std::abs(pert0.eval(0.0) - sols0[static_cast<std::size_t>(n)].eigenvalue);
    cell.anchor_pass = cell.anchor_error < kAlpha0EnergyBound;

    cell.pass = cell.slope_pass && cell.spot_pass && cell.anchor_pass;
    return cell;
}

struct OverlapSweepCell {
    int m = 0;
    int n = 0;
    std::vector<double> alphas;
    std::vector<double> deficits;
    std::vector<double> residuals;
    double deficit_slope = 0.0;
    double residual_slope = 0.0;
    bool pass = false;
};

nlohmann::json scaling_cell_json(const ScalingCell& cell, bool with_spot) {
    nlohmann::json j{{"m", cell.report.m},
                     {"n", cell.report.n},
                     {"order", cell.report.order},
                     {"alphas", cell.report.alphas},
                     {"errors", cell.report.errors},
                     {"fitted_slope", cell.report.fitted_slope},
                     {"fitted_intercept", cell.report.fitted_intercept},
                     {"slope_threshold", cell.report.order == 1 ? kFirstOrderSlopeMin : kSecondOrderSlopeMin},
                     {"slope_pass", cell.slope_pass},
                     {"anchor_error", cell.anchor_error},
                     {"anchor_bound", kAlpha0EnergyBound},
                     {"anchor_pass", cell.anchor_pass},
                     {"pass", cell.pass}};
    if (with_spot) {
        j["spot_alpha"] = kSpotAlpha;
        j["spot_error"] = cell.spot_error;
        j["spot_bound"] = cell.report.order == 1 ? kFirstOrderSpotBound : kSecondOrderSpotBound;
        j["spot_pass"] = cell.spot_pass;
    }
    return j;
}

}  // namespace

VerifyResult run_full_verification(const VerifyConfig& config) {
    const unsigned threads = config.threads ? config.threads : default_thread_count();
    VerifyResult result;
    bool all_pass = true;

    nlohmann::json report;
    report["schema"] = 1;
    report["config"] = {{"m_max", config.m_max},
                        {"n_max", config.n_max},
                        {"reduction_m_max", config.reduction_m_max},
                        {"reduction_n_max", config.reduction_n_max},
                        {"scaling_m_max", config.scaling_m_max},
                        {"scaling_n_max", config.scaling_n_max},
                        {"overlap_anchor_max", config.overlap_anchor_max},
                        {"alphas", config.alphas},
                        {"mutation", config.mutation == Mutation::none ? "none" : "b_recursion_numerator"}};

    // exact identity ledger
    {
        const auto ledger = identity_suite(config.m_max, config.n_max, config.mutation);
        nlohmann::json section = nlohmann::json::array();
        for (const IdentityCheck& check : ledger) {
            all_pass = all_pass && check.pass;
            section.push_back(
                {{"name", check.name}, {"pass", check.pass}, {"counterexample", check.counterexample}});
        }
        report["identities"] = std::move(section);
    }

    // exact alpha = 0 reduction
    {
        const auto entries = legendre_reduction(std::min(config.m_max, config.reduction_m_max),
                                                std::min(config.n_max, config.reduction_n_max));
        nlohmann::json section = nlohmann::json::array();
        for (const ReductionEntry& entry : entries) {
            all_pass = all_pass && entry.pass;
            section.push_back({{"m", entry.m},
                               {"n", entry.n},
                               {"ratio", entry.ratio.to_string()},
                               {"pass", entry.pass}});
        }
        report["legendre_reduction"] = std::move(section);
    }

    // eigenvalue scaling cells: first order over the grid, second order for
    // the ground state column
    {
        struct CellSpec {
            int m, n, order;
            bool with_spot;
        };
        std::vector<CellSpec> specs;
        for (int m = 0; m <= std::min(config.m_max, config.scaling_m_max); ++m)
            for (int n = 0; n <= std::min(config.n_max, config.scaling_n_max); ++n)
                specs.push_back({m, n, 1, true});
        for (int m = 0; m <= std::min(config.m_max, config.scaling_m_max); ++m)
            specs.push_back({m, 0, 2, m == 0});

        std::vector<ScalingCell> cells(specs.size());
        parallel_for(specs.size(), threads, [&](std::size_t i) {
            cells[i] = run_scaling_cell(specs[i].m, specs[i].n, specs[i].order, config.alphas,
                                        specs[i].with_spot);
        });

        nlohmann::json section = nlohmann::json::array();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            all_pass = all_pass && cells[i].pass;
            section.push_back(scaling_cell_json(cells[i], specs[i].with_spot));
        }
        report["eigenvalue_scaling"] = std::move(section);
    }

    // overlap anchors at alpha = 0
    {
        struct AnchorSpec {
            int m, n;
        };
        std::vector<AnchorSpec> specs;
        const int anchor_m = std::min(config.m_max, config.overlap_anchor_max);
        const int anchor_n = std::min(config.n_max, config.overlap_anchor_max);
        for (int m = 0; m <= anchor_m; ++m)
            for (int n = 0; n <= anchor_n; ++n) specs.push_back({m, n});

        std::vector<OverlapReport> anchors(specs.size());
        parallel_for(specs.size(), threads,
                     [&](std::size_t i) { anchors[i] = eigenfunction_overlap(specs[i].m, specs[i].n, 0.0); });

        nlohmann::json section = nlohmann::json::array();
        for (const OverlapReport& a : anchors) {
            const bool pass = a.overlap_deficit < kAlpha0DeficitBound;
            all_pass = all_pass && pass;
            section.push_back({{"m", a.m},
                               {"n", a.n},
                               {"alpha", a.alpha},
                               {"deficit", a.overlap_deficit},
                               {"ode_residual", a.ode_residual},
                               {"bound", kAlpha0DeficitBound},
                               {"pass", pass}});
        }
        report["overlap_anchors"] = std::move(section);
    }

    // overlap and residual scaling sweeps on low-lying states
    {
        struct SweepSpec {
            int m, n;
        };
        std::vector<SweepSpec> specs;
        for (SweepSpec s : {SweepSpec{0, 0}, SweepSpec{0, 1}, SweepSpec{1, 0}, SweepSpec{1, 1}})
            if (s.m <= config.m_max && s.n <= config.n_max) specs.push_back(s);

        struct Slot {
            OverlapReport report;
        };
        std::vector<Slot> slots(specs.size() * config.alphas.size());
        parallel_for(slots.size(), threads, [&](std::size_t i) {
            const SweepSpec& s = specs[i / config.alphas.size()];
            const double alpha = config.alphas[i % config.alphas.size()];
            slots[i].report = eigenfunction_overlap(s.m, s.n, alpha);
        });

        nlohmann::json section = nlohmann::json::array();
        for (std::size_t c = 0; c < specs.size(); ++c) {
            OverlapSweepCell cell;
            cell.m = specs[c].m;
            cell.n = specs[c].n;
            cell.alphas = config.alphas;
            for (std::size_t k = 0; k < config.alphas.size(); ++k) {
                const OverlapReport& r = slots[c * config.alphas.size() + k].report;
                cell.deficits.push_back(r.overlap_deficit);
                cell.residuals.push_back(r.ode_residual);
            }
            cell.deficit_slope = fit_loglog(cell.alphas, cell.deficits).slope;
            cell.residual_slope = fit_loglog(cell.alphas, cell.residuals).slope;
            cell.pass = cell.deficit_slope >= kDeficitSlopeMin && cell.residual_slope >= kResidualSlopeMin;
            all_pass = all_pass && cell.pass;
            section.push_back({{"m", cell.m},
                               {"n", cell.n},
                               {"alphas", cell.alphas},
                               {"deficits", cell.deficits},
                               {"residuals", cell.residuals},
                               {"deficit_slope", cell.deficit_slope},
                               {"deficit_threshold", kDeficitSlopeMin},
                               {"residual_slope", cell.residual_slope},
                               {"residual_threshold", kResidualSlopeMin},
                               {"pass", cell.pass}});
        }
        report["overlap_scaling"] = std::move(section);
    }

    report["pass"] = all_pass;
    result.pass = all_pass;
    result.report = std::move(report);
    return result;
}

void write_report_files(const VerifyResult& result, const std::string& directory) {
    namespace fs = std::filesystem;
    const fs::path dir(directory);
    fs::create_directories(dir);

    {
        std::ofstream os(dir / "report.json", std::ios::binary);
        os << result.report.dump(2) << "\n";
    }

    std::ofstream os(dir / "report.csv", std::ios::binary);
    os << "section,check,m,n,order,alpha,value,threshold,pass\n";
    auto row = [&os](const std::string& section, const std::string& check, const std::string& m,
                     const std::string& n, const std::string& order, const std::string& alpha,
                     const std::string& value, const std::string& threshold, bool pass) {
        os << csv_escape(section) << ',' << csv_escape(check) << ',' << m << ',' << n << ',' << order
           << ',' << alpha << ',' << csv_escape(value) << ',' << threshold << ','
           << (pass ? "true" : "false") << "\n";
    };

    const nlohmann::json& r = result.report;
    for (const auto& c : r.at("identities"))
        row("identity", c.at("name").get<std::string>(), "", "", "", "",
            c.at("counterexample").get<std::string>(), "", c.at("pass").get<bool>());
    for (const auto& c : r.at("legendre_reduction"))
        row("reduction", "alpha0_reduction", std::to_string(c.at("m").get<int>()),
            std::to_string(c.at("n").get<int>()), "", "", c.at("ratio").get<std::string>(), "",
            c.at("pass").get<bool>());
    for (const auto& c : r.at("eigenvalue_scaling")) {
        const std::string m = std::to_string(c.at("m").get<int>());
        const std::string n = std::to_string(c.at("n").get<int>());
        const std::string order = std::to_string(c.at("order").get<int>());
        row("scaling", "slope", m, n, order, "", fmt_double(c.at("fitted_slope").get<double>()),
            fmt_double(c.at("slope_threshold").get<double>()), c.at("slope_pass").get<bool>());
        if (c.contains("spot_error"))
            row("scaling", "spot", m, n, order, fmt_double(c.at("spot_alpha").get<double>()),
                fmt_double(c.at("spot_error").get<double>()), fmt_double(c.at("spot_bound").get<double>()),
                c.at("spot_pass").get<bool>());
        row("scaling", "anchor", m, n, order, "0", fmt_double(c.at("anchor_error").get<double>()),
            fmt_double(c.at("anchor_bound").get<double>()), c.at("anchor_pass").get<bool>());
    }
    for (const auto& c : r.at("overlap_anchors"))
        row("overlap_anchor", "deficit", std::to_string(c.at("m").get<int>()),
            std::to_string(c.at("n").get<int>()), "1", "0", fmt_double(c.at("deficit").get<double>()),
            fmt_double(c.at("bound").get<double>()), c.at("pass").get<bool>());
    for (const auto& c : r.at("overlap_scaling")) {
        const std::string m = std::to_string(c.at("m").get<int>());
        const std::string n = std::to_string(c.at("n").get<int>());
        row("overlap_scaling", "deficit_slope", m, n, "1", "",
            fmt_double(c.at("deficit_slope").get<double>()),
            fmt_double(c.at("deficit_threshold").get<double>()), c.at("pass").get<bool>());
        row("overlap_scaling", "residual_slope", m, n, "1", "",
            fmt_double(c.at("residual_slope").get<double>()),
            fmt_double(c.at("residual_threshold").get<double>()), c.at("pass").get<bool>());
    }
    row("summary", "all", "", "", "", "", "", "", r.at("pass").get<bool>());
}

}  // namespace sphsusy::verify
