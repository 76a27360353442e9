#include "sphsusy/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sphsusy/format.hpp"
#include "sphsusy/oracle/galerkin.hpp"
#include "sphsusy/susy.hpp"
#include "sphsusy/trig_json.hpp"
#include "sphsusy/verify.hpp"

namespace sphsusy::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// "0.1" or "start:stop:geometric:count".
std::vector<double> parse_alpha_spec(const std::string& spec) {
    if (spec.find(':') == std::string::npos) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(spec, &pos);
            if (pos != spec.size()) throw std::invalid_argument(spec);
            return {v};
        } catch (const std::exception&) {
            throw UsageError("invalid --alpha value '" + spec + "'");
        }
    }
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 4 || parts[2] != "geometric")
        throw UsageError("sweep spec must be start:stop:geometric:count, got '" + spec + "'");
    double start = 0.0, stop = 0.0;
    long count = 0;
    try {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        count = std::stol(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("unparsable sweep spec '" + spec + "'");
    }
    if (!(start > 0.0) || !(stop > start) || count < 2)
        throw UsageError("sweep needs 0 < start < stop and count >= 2");
    std::vector<double> alphas(static_cast<std::size_t>(count));
    const double ratio = std::pow(stop / start, 1.0 / (static_cast<double>(count) - 1.0));
    for (long i = 0; i < count; ++i) alphas[static_cast<std::size_t>(i)] = start * std::pow(ratio, i);
    alphas.back() = stop;  // pin the endpoint against rounding drift
    return alphas;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    return file;
}

nlohmann::json eigenstate_json(int m, const susy::Eigenstate& state, int order) {
    nlohmann::json energy = nlohmann::json::array();
    for (const Rational& c : state.energy.coeffs()) energy.push_back(c.to_string());
    return nlohmann::json{{"m", m},
                          {"n", state.n},
                          {"order", order},
                          {"energy", std::move(energy)},
                          {"wavefunction", trig_form_to_json(state.wavefunction)},
                          {"theta_form", trig_form_to_json(state.theta_form)}};
}

struct CommonArgs {
    int m = 0;
    int n = 0;
    int order = 1;
    std::string alpha_spec = "0";
    std::string format = "text";
    std::string output;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_order = true) {
    cmd->add_option("--m", args.m, "azimuthal index m >= 0")->check(CLI::NonNegativeNumber);
    cmd->add_option("--n", args.n, "excitation index n >= 0")->check(CLI::NonNegativeNumber);
    if (with_order)
        cmd->add_option("--order", args.order, "alpha truncation order (2 only for n = 0)")
            ->check(CLI::Range(1, 2));
    cmd->add_option("--alpha", args.alpha_spec, "alpha value or sweep start:stop:geometric:count");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--output,-o", args.output, "output file (default stdout)");
}

int cmd_energy(const CommonArgs& args) {
    const std::vector<double> alphas = parse_alpha_spec(args.alpha_spec);
    const susy::EnergySeries series =
        susy::energy_level(susy::ProblemParams(args.m, alphas.front(), args.order), args.n);

    std::ofstream file;
    std::ostream& os = open_output(file, args.output);

    if (args.format == "json") {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const Rational& c : series.coeffs()) coeffs.push_back(c.to_string());
        nlohmann::json evals = nlohmann::json::array();
        for (double a : alphas) evals.push_back({{"alpha", a}, {"value", series.eval(a)}});
        os << nlohmann::json{{"m", args.m},
                             {"n", args.n},
                             {"order", args.order},
                             {"coefficients", std::move(coeffs)},
                             {"evaluations", std::move(evals)}}
                  .dump(2)
           << "\n";
    } else if (args.format == "csv") {
        // comparison table against the oracle
        os << "m,n,alpha,E_pert,E_oracle,abs_err\n";
        for (double a : alphas) {
            const auto sols = oracle::converge(args.m, a, static_cast<std::size_t>(args.n) + 1);
            const double pert = series.eval(a);
            const double exact = sols[static_cast<std::size_t>(args.n)].eigenvalue;
            os << args.m << ',' << args.n << ',' << fmt_double(a) << ',' << fmt_double(pert) << ','
               << fmt_double(exact) << ',' << fmt_double(std::abs(pert - exact)) << "\n";
        }
    } else {
        os << "E(m=" << args.m << ", n=" << args.n << ", order=" << args.order << ") =";
        for (int k = 0; k <= series.order(); ++k) {
            const Rational& c = series.coeff(k);
            if (k == 0) {
                os << " " << c.to_string();
            } else {
                os << (c.sign() < 0 ? " - " : " + ") << abs(c).to_string() << "*a";
                if (k > 1) os << "^" << k;
            }
        }
        os << "\n";
        for (double a : alphas)
            os << "  alpha=" << fmt_double(a) << "  E=" << fmt_double(series.eval(a)) << "\n";
    }
    return kExitOk;
}

int cmd_state(const CommonArgs& args, int grid_points) {
    const std::vector<double> alphas = parse_alpha_spec(args.alpha_spec);
    if (alphas.size() != 1) throw UsageError("state takes a single --alpha, not a sweep");
    const double alpha = alphas.front();
    if (args.order == 2 && args.n != 0) throw UsageError("order 2 is only available for n = 0");

    const susy::ProblemParams params(args.m, alpha, args.order);
    susy::Eigenstate state =
        args.n == 0 ? susy::ground_state(params) : susy::excited_state(params, args.n);
    if (alpha == 0.0) {
        // at alpha = 0 the state is its alpha^0 part exactly
        state.wavefunction = state.wavefunction.alpha_part(0);
        state.theta_form = state.theta_form.alpha_part(0);
    }

    std::ofstream file;
    std::ostream& os = open_output(file, args.output);

    std::vector<double> thetas(static_cast<std::size_t>(grid_points));
    for (int i = 1; i <= grid_points; ++i)
        thetas[static_cast<std::size_t>(i - 1)] = M_PI * i / (grid_points + 1.0);

    if (args.format == "json") {
        nlohmann::json j = eigenstate_json(args.m, state, args.order);
        j["alpha"] = alpha;
        j["normalization"] = susy::normalization_constant(state.wavefunction, alpha);
        nlohmann::json samples = nlohmann::json::array();
        for (double t : thetas)
            samples.push_back({{"theta", t},
                               {"psi", state.wavefunction.eval(t, alpha)},
                               {"Theta", state.theta_form.eval(t, alpha)}});
        j["samples"] = std::move(samples);
        os << j.dump(2) << "\n";
    } else if (args.format == "csv") {
        os << "m,n,alpha,theta,psi,Theta\n";
        for (double t : thetas)
            os << args.m << ',' << args.n << ',' << fmt_double(alpha) << ',' << fmt_double(t) << ','
               << fmt_double(state.wavefunction.eval(t, alpha)) << ','
               << fmt_double(state.theta_form.eval(t, alpha)) << "\n";
    } else {
        os << "psi(m=" << args.m << ", n=" << args.n << ") = " << state.wavefunction.to_text() << "\n";
        os << "Theta = psi / sin^{1/2} = " << state.theta_form.to_text() << "\n";
        os << "E =";
        for (int k = 0; k <= state.energy.order(); ++k) {
            const Rational& c = state.energy.coeff(k);
            if (k == 0) {
                os << " " << c.to_string();
            } else {
                os << (c.sign() < 0 ? " - " : " + ") << abs(c).to_string() << "*a";
                if (k > 1) os << "^" << k;
            }
        }
        os << "   (alpha=" << fmt_double(alpha) << ": E=" << fmt_double(state.energy.eval(alpha))
           << ")\n";
    }
    return kExitOk;
}

int cmd_ladder(const CommonArgs& args) {
    const std::vector<double> alphas = parse_alpha_spec(args.alpha_spec);
    const susy::ProblemParams params(args.m, alphas.front(), 1);
    const auto seq = susy::ladder_sequence(params, args.n);

    std::ofstream file;
    std::ostream& os = open_output(file, args.output);

    if (args.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const susy::LadderParams& p : seq) {
            const susy::EnergySeries r = susy::ladder_remainder(params, p.k);
            rows.push_back({{"k", p.k},
                            {"A", p.a.to_string()},
                            {"B", p.b.to_string()},
                            {"R", nlohmann::json::array({r.coeff(0).to_string(), r.coeff(1).to_string()})}});
        }
        os << nlohmann::json{{"m", args.m}, {"rows", std::move(rows)}}.dump(2) << "\n";
    } else if (args.format == "csv") {
        os << "k,A,B,R_const,R_alpha\n";
        for (const susy::LadderParams& p : seq) {
            const susy::EnergySeries r = susy::ladder_remainder(params, p.k);
            os << p.k << ',' << csv_escape(p.a.to_string()) << ',' << csv_escape(p.b.to_string()) << ','
               << csv_escape(r.coeff(0).to_string()) << ',' << csv_escape(r.coeff(1).to_string()) << "\n";
        }
    } else {
        os << "ladder parameters at m=" << args.m << " (R = R0 + R1*a)\n";
        os << "k\tA_k\tB_k\tR0\tR1\n";
        for (const susy::LadderParams& p : seq) {
            const susy::EnergySeries r = susy::ladder_remainder(params, p.k);
            os << p.k << '\t' << p.a.to_string() << '\t' << p.b.to_string() << '\t'
               << r.coeff(0).to_string() << '\t' << r.coeff(1).to_string() << "\n";
        }
    }
    return kExitOk;
}

int cmd_oracle(const CommonArgs& args, const std::string& convention) {
    const std::vector<double> alphas = parse_alpha_spec(args.alpha_spec);
    const bool flammer = convention == "flammer";
    const char* label = flammer ? "lambda" : "eigenvalue";

    std::ofstream file;
    std::ostream& os = open_output(file, args.output);

    const std::size_t levels = static_cast<std::size_t>(args.n) + 1;
    nlohmann::json jrows = nlohmann::json::array();
    if (args.format == "csv") os << "m,n,alpha," << label << ",l_max,residual\n";
    if (args.format == "text")
        os << "m\tn\talpha\t" << label << "\tl_max\tresidual\n";
    for (double a : alphas) {
        const double internal_alpha = flammer ? -a : a;  // flammer tables use alpha = -c^2
        const auto sols = oracle::converge(args.m, internal_alpha, levels);
        for (std::size_t n = 0; n < sols.size(); ++n) {
            const oracle::SpectralSolution& s = sols[n];
            if (args.format == "json") {
                jrows.push_back({{"m", args.m},
                                 {"n", n},
                                 {"alpha", a},
                                 {label, s.eigenvalue},
                                 {"l_max", s.l_max},
                                 {"residual", s.residual_estimate}});
            } else if (args.format == "csv") {
                os << args.m << ',' << n << ',' << fmt_double(a) << ',' << fmt_double(s.eigenvalue)
                   << ',' << s.l_max << ',' << fmt_double(s.residual_estimate) << "\n";
            } else {
                os << args.m << '\t' << n << '\t' << fmt_double(a) << '\t' << fmt_double(s.eigenvalue)
                   << '\t' << s.l_max << '\t' << fmt_double(s.residual_estimate) << "\n";
            }
        }
    }
    if (args.format == "json") os << jrows.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(verify::VerifyConfig config, const std::string& out_dir, const std::string& command_line) {
    const verify::VerifyResult result = verify::run_full_verification(config);
    verify::write_report_files(result, out_dir);

    {
        // run metadata goes to a sidecar so the report files stay byte-stable
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        std::ofstream meta(std::filesystem::path(out_dir) / "report.meta.json", std::ios::binary);
        meta << nlohmann::json{{"schema", 1}, {"command", command_line}, {"generated_at", stamp}}.dump(2)
             << "\n";
    }

    auto section_line = [&](const char* name, const nlohmann::json& arr) {
        std::size_t passed = 0;
        for (const auto& c : arr)
            if (c.at("pass").get<bool>()) ++passed;
        std::cout << name << ": " << passed << "/" << arr.size() << " pass\n";
    };
    section_line("identities", result.report.at("identities"));
    section_line("legendre_reduction", result.report.at("legendre_reduction"));
    section_line("eigenvalue_scaling", result.report.at("eigenvalue_scaling"));
    section_line("overlap_anchors", result.report.at("overlap_anchors"));
    section_line("overlap_scaling", result.report.at("overlap_scaling"));
    std::cout << (result.pass ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return result.pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"spheroidal angular functions via shape-invariant SUSY perturbation"};
    app.set_config("--config", "", "key=value config file mirroring the flags");
    app.require_subcommand(1);

    CommonArgs energy_args, state_args, ladder_args, oracle_args;
    int grid_points = 181;
    std::string convention = "paper";

    CLI::App* energy = app.add_subcommand("energy", "perturbative eigenvalue table");
    add_common(energy, energy_args);

    CLI::App* state = app.add_subcommand("state", "symbolic eigenfunction plus grid samples");
    add_common(state, state_args);
    state->add_option("--grid", grid_points, "number of interior theta samples")
        ->check(CLI::PositiveNumber);

    CLI::App* ladder = app.add_subcommand("ladder", "shape-invariance parameters A_k, B_k, R_k");
    add_common(ladder, ladder_args, /*with_order=*/false);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "spectral-oracle eigenvalues");
    add_common(oracle_cmd, oracle_args, /*with_order=*/false);
    oracle_cmd->add_option("--convention", convention, "paper (E, +alpha x^2) or flammer (lambda, -c^2 x^2)")
        ->check(CLI::IsMember({"paper", "flammer"}));

    verify::VerifyConfig vconfig;
    std::string verify_out = ".";
    std::string verify_alpha_spec;
    unsigned verify_threads = 0;
    bool mutate_b = false;
    CLI::App* verify_cmd = app.add_subcommand("verify", "full verification ledger and report files");
    verify_cmd->add_option("--m-max", vconfig.m_max, "identity sweep bound on m")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--n-max", vconfig.n_max, "identity sweep bound on n")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--alpha", verify_alpha_spec, "sweep spec start:stop:geometric:count");
    verify_cmd->add_option("--output,-o", verify_out, "directory for report.json/report.csv");
    verify_cmd->add_option("--threads", verify_threads, "worker threads (default SPHESUSY_THREADS)");
    verify_cmd->add_flag("--mutate-b-recursion", mutate_b, "")->group("");  // test-only fault injection

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (energy->parsed()) return cmd_energy(energy_args);
        if (state->parsed()) return cmd_state(state_args, grid_points);
        if (ladder->parsed()) return cmd_ladder(ladder_args);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_args, convention);
        if (verify_cmd->parsed()) {
            if (!verify_alpha_spec.empty()) {
                vconfig.alphas = parse_alpha_spec(verify_alpha_spec);
                if (vconfig.alphas.size() < 2) throw UsageError("verify needs an alpha sweep");
            }
            vconfig.threads = verify_threads;
            vconfig.mutation =
                mutate_b ? verify::Mutation::b_recursion_numerator : verify::Mutation::none;
            std::string command_line = "sphsusy";
            for (const std::string& a : args) command_line += " " + a;
            return cmd_verify(vconfig, verify_out, command_line);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const oracle::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const verify::PairingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace sphsusy::cli
