#include <doctest.h>

#include <cmath>
#include <random>

#include "sphsusy/oracle/galerkin.hpp"
#include "sphsusy/oracle/legendre.hpp"
#include "sphsusy/oracle/tridiagonal.hpp"
#include "sphsusy/quadrature.hpp"

using namespace sphsusy;
using namespace sphsusy::oracle;

TEST_CASE("associated legendre spot values") {
    CHECK(assoc_legendre(0, 0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(assoc_legendre(0, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(assoc_legendre(0, 2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
    // no Condon-Shortley phase: P_1^1 is positive
    CHECK(assoc_legendre(1, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(assoc_legendre(2, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(assoc_legendre(0, 0, 1.5), std::domain_error);
}

TEST_CASE("associated legendre agrees with the exact polynomial route") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> xs(-0.999, 0.999);
    for (int m = 0; m <= 6; ++m) {
        for (int l = m; l <= m + 12; ++l) {
            const CosPoly poly = legendre_derivative_poly(l, m);
            for (int i = 0; i < 10; ++i) {
                const double x = xs(rng);
                const double direct = assoc_legendre(m, l, x);
                const double via_poly = std::pow(1.0 - x * x, 0.5 * m) * poly.eval(x);
                CHECK(direct == doctest::Approx(via_poly).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("associated legendre stays accurate at high degree") {
    // exact-rational route evaluated exactly at x = 7/20, then compared
    for (const int l : {50, 100}) {
        for (const int m : {0, 2, 5}) {
            const Rational x(7, 20);
            const CosPoly poly = legendre_derivative_poly(l, m);
            const double exact =
                std::pow(1.0 - 0.35 * 0.35, 0.5 * m) * poly.eval_exact(x).to_double();
            const double fast = assoc_legendre(m, l, 0.35);
            CHECK(std::abs(fast - exact) <= 1e-12 * std::max(std::abs(exact), 1e-30));
        }
    }
}

TEST_CASE("eigensolve error carries block and shifts") {
    const EigensolveError err("m=1 parity=odd", {0.25, -1.5});
    CHECK(err.block() == "m=1 parity=odd");
    CHECK(err.shift_history().size() == 2);
    CHECK(std::string(err.what()).find("m=1 parity=odd") != std::string::npos);
}

TEST_CASE("exact legendre polynomials") {
    // P_2 = (3u^2 - 1)/2
    CHECK(legendre_derivative_poly(2, 0) == CosPoly({Rational(-1, 2), Rational(0), Rational(3, 2)}));
    // d P_3/du = (15u^2 - 3)/2
    CHECK(legendre_derivative_poly(3, 1) == CosPoly({Rational(-3, 2), Rational(0), Rational(15, 2)}));
    // P_3^3 polynomial part is the constant 15
    CHECK(legendre_derivative_poly(3, 3) == CosPoly::constant(Rational(15)));
}

TEST_CASE("orthonormalization constants") {
    // l = m = 0: integral of P_0^2 over [-1,1] is 2
    CHECK(assoc_legendre_norm(0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    // numeric check of unit norm through quadrature in x = cos(theta)
    const QuadratureRule rule = gauss_legendre(128, -1.0, 1.0);
    for (const auto [m, l] : {std::pair{0, 3}, std::pair{1, 4}, std::pair{3, 7}}) {
        double total = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = assoc_legendre_norm(m, l) * assoc_legendre(m, l, rule.nodes[i]);
            total += rule.weights[i] * v * v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("basis coupling invariants") {
    for (int m = 0; m <= 10; ++m) {
        const LegendreBasis basis(m, 64);
        for (int l = m; l < 64; ++l) {
            const double a = basis.a(l);
            CHECK(a > 0.0);
            CHECK(a < 1.0);
        }
        CHECK(std::abs(basis.a(63) - 0.5) < 1.0 / 64.0);
    }
    CHECK_THROWS_AS(LegendreBasis(5, 7), std::invalid_argument);
}

TEST_CASE("galerkin matrix entries") {
    const LegendreBasis basis(0, 32);

    // alpha = 0 gives the diagonal l(l+1) with zero coupling
    const SymmetricTridiagonal t0 = build_matrix(basis, 0.0, BlockParity::even);
    for (std::size_t i = 0; i < t0.size(); ++i) {
        const double l = 2.0 * static_cast<double>(i);
        CHECK(t0.diag[i] == doctest::Approx(l * (l + 1)).epsilon(1e-15));
    }
    for (double e : t0.off) CHECK(e == 0.0);

    // alpha = 1, m=0 even block: first diagonal entry -a_0^2 = -1/3,
    // first off-diagonal -a_0 a_1 = -sqrt(1/3) sqrt(4/15)
    const SymmetricTridiagonal t1 = build_matrix(basis, 1.0, BlockParity::even);
    CHECK(t1.diag[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(t1.off[0] == doctest::Approx(-std::sqrt(1.0 / 3.0) * std::sqrt(4.0 / 15.0)).epsilon(1e-15));

    // odd block starts at l = 1
    const SymmetricTridiagonal todd = build_matrix(basis, 0.0, BlockParity::odd);
    CHECK(todd.diag[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sturm counts") {
    SymmetricTridiagonal t;
    t.diag = {2.0, 2.0, 2.0};
    t.off = {1.0, 1.0};
    // eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
    CHECK(sturm_count(t, 0.0) == 0);
    CHECK(sturm_count(t, 1.0) == 1);
    CHECK(sturm_count(t, 2.5) == 2);
    CHECK(sturm_count(t, 4.0) == 3);
}

TEST_CASE("tridiagonal eigensolver on a known matrix") {
    SymmetricTridiagonal t;
    t.diag = {2.0, 2.0};
    t.off = {1.0};
    const auto pairs = smallest_eigenpairs(t, 2);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pairs[1].value == doctest::Approx(3.0).epsilon(1e-14));
    // lowest vector is (1,-1)/sqrt(2) up to overall sign
    CHECK(std::abs(pairs[0].vector[0]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(pairs[0].vector[0] * pairs[0].vector[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pairs[0].residual < 1e-14);
}

TEST_CASE("bisection plus inverse iteration agrees with QL on random matrices") {
    std::mt19937 rng(99123);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(trial) % 36;
        SymmetricTridiagonal t;
        t.diag.resize(n);
        t.off.resize(n - 1);
        for (auto& d : t.diag) d = entry(rng);
        for (auto& e : t.off) e = entry(rng);

        const std::size_t k = std::min<std::size_t>(n, 4);
        const auto fast = smallest_eigenpairs(t, k);
        const auto full = ql_eigensystem(t);
        double scale = 0.0;
        for (double d : t.diag) scale = std::max(scale, std::abs(d));
        for (double e : t.off) scale = std::max(scale, std::abs(e));

        for (std::size_t j = 0; j < k; ++j) {
            CHECK(std::abs(fast[j].value - full[j].value) < 1e-12 * std::max(scale, 1.0));
            CHECK(fast[j].residual < 1e-12 * std::max(scale, 1.0));
            CHECK(full[j].residual < 1e-12 * std::max(scale, 1.0));
        }
        // inverse-iteration vectors within the set are orthonormal
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += fast[a].vector[i] * fast[b].vector[i];
                CHECK(std::abs(dot) < 1e-10);
            }
    }
}

TEST_CASE("spectra at alpha zero are exactly l(l+1)") {
    // m=0: 0, 2, 6; m=2: 6, 12
    const auto s0 = solve(LegendreBasis(0, 32), 0.0, 3);
    REQUIRE(s0.size() == 3);
    CHECK(std::abs(s0[0].eigenvalue - 0.0) < 1e-12);
    CHECK(std::abs(s0[1].eigenvalue - 2.0) < 1e-12);
    CHECK(std::abs(s0[2].eigenvalue - 6.0) < 1e-12);

    const auto s2 = solve(LegendreBasis(2, 32), 0.0, 2);
    CHECK(std::abs(s2[0].eigenvalue - 6.0) < 1e-12);
    CHECK(std::abs(s2[1].eigenvalue - 12.0) < 1e-12);

    // eigenvectors collapse to unit basis vectors
    for (const auto& sol : s0) {
        double largest = 0.0, others = 0.0;
        for (double c : sol.coeffs) {
            if (std::abs(c) > largest) {
                others = std::max(others, largest);
                largest = std::abs(c);
            } else {
                others = std::max(others, std::abs(c));
            }
        }
        CHECK(largest == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(others < 1e-10);
    }
}

TEST_CASE("solver invariants at finite alpha") {
    const LegendreBasis basis(1, 48);
    const auto sols = solve(basis, 0.35, 4);
    REQUIRE(sols.size() == 4);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        CHECK(sols[i].residual_estimate < 1e-10);
        double norm2 = 0.0;
        for (double c : sols[i].coeffs) norm2 += c * c;
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
        if (i > 0) CHECK(sols[i].eigenvalue > sols[i - 1].eigenvalue);
    }
    // orthogonality within a parity block
    for (std::size_t a = 0; a < sols.size(); ++a)
        for (std::size_t b = a + 1; b < sols.size(); ++b) {
            if (sols[a].parity != sols[b].parity) continue;
            double dot = 0.0;
            for (std::size_t i = 0; i < sols[a].coeffs.size(); ++i)
                dot += sols[a].coeffs[i] * sols[b].coeffs[i];
            CHECK(std::abs(dot) < 1e-10);
        }
}

TEST_CASE("eigenfunction evaluation") {
    const LegendreBasis basis(0, 32);
    const auto sols = solve(basis, 0.0, 2);

    // ground state value at pi/2 is 1/sqrt(2)
    CHECK(eigenfunction_eval(sols[0], basis, M_PI / 2) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // first excited state is odd about pi/2
    CHECK(std::abs(eigenfunction_eval(sols[1], basis, M_PI / 2)) < 1e-12);

    CHECK_THROWS_AS(eigenfunction_eval(sols[0], basis, 0.0), std::domain_error);

    // unit L2 norm over (0, pi)
    const QuadratureRule& rule = theta_rule(512);
    for (const auto& sol : sols) {
        double total = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = eigenfunction_eval(sol, basis, rule.nodes[i]);
            total += rule.weights[i] * v * v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }

    // nodeless ground state keeps one sign after the convention fix
    const LegendreBasis basis1(1, 32);
    const auto ground1 = solve(basis1, 0.2, 1);
    for (int i = 1; i <= 50; ++i) {
        const double theta = M_PI * i / 51.0;
        CHECK(eigenfunction_eval(ground1[0], basis1, theta) > 0.0);
    }
}

TEST_CASE("parity symmetry of the eigenfunctions") {
    const LegendreBasis basis(0, 48);
    const auto sols = solve(basis, 0.3, 3);
    for (std::size_t n = 0; n < sols.size(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int i = 1; i <= 20; ++i) {
            const double theta = M_PI * i / 43.0;
            const double a = eigenfunction_eval(sols[n], basis, theta);
            const double b = eigenfunction_eval(sols[n], basis, M_PI - theta);
            CHECK(std::abs(a - sign * b) < 1e-9);
        }
    }
}

TEST_CASE("variational monotonicity in the basis size") {
    for (double alpha : {0.5, -0.5}) {
        std::vector<double> prev;
        for (int l_max : {32, 64, 128}) {
            const auto sols = solve(LegendreBasis(0, l_max), alpha, 4);
            if (!prev.empty())
                for (std::size_t i = 0; i < prev.size(); ++i)
                    CHECK(sols[i].eigenvalue <= prev[i] + 1e-11);
            prev.clear();
            for (const auto& s : sols) prev.push_back(s.eigenvalue);
        }
    }
}

TEST_CASE("converge refines until stable") {
    // alpha = 0 is exact at the first refinement
    const auto s0 = converge(0, 0.0, 3);
    CHECK(s0[0].l_max == 64);
    CHECK(std::abs(s0[2].eigenvalue - 6.0) < 1e-12);

    // spec spot value: ground eigenvalue at alpha=0.1 near the series
    const auto s = converge(0, 0.1, 1);
    CHECK(std::abs(s[0].eigenvalue - (-0.1 / 3.0 - 2.0 * 0.01 / 135.0)) < 1e-5);

    // stability against one more refinement
    const auto more = solve(LegendreBasis(0, 2 * s[0].l_max), 0.1, 1);
    CHECK(std::abs(more[0].eigenvalue - s[0].eigenvalue) < 1e-11);

    // opposite-sign alpha converges and shifts the other way
    const auto plus = converge(0, 0.5, 1);
    const auto minus = converge(0, -0.5, 1);
    CHECK(plus[0].eigenvalue < 0.0);
    CHECK(minus[0].eigenvalue > 0.0);
}
