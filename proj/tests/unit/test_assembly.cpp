#include "oracles.hpp"

#include <fracnodal/errors.hpp>
#include <fracnodal/quadratic_form.hpp>

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <sstream>

using namespace fracnodal;

TEST_CASE("grid spacing and nodes") {
    const Grid small = build_grid(1.0, 3);
    CHECK(small.spacing == 1.0);
    CHECK(small[0] == -1.0);
    CHECK(small[1] == 0.0);
    CHECK(small[2] == 1.0);

    const Grid g = build_grid(20.0, 801);
    CHECK(g.spacing == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(g[400] == 0.0);
    for (Eigen::Index i = 0; i + 1 < g.size(); ++i) {
        CHECK(std::abs(g[i + 1] - g[i] - g.spacing) <= 1e-12 * g.spacing);
    }
    CHECK(g[0] == -20.0);
    CHECK(g[800] == 20.0);

    const Eigen::VectorXd mass = g.nodal_mass();
    CHECK(mass.sum() == doctest::Approx(40.0).epsilon(1e-13));
    CHECK(mass[0] == doctest::Approx(0.025));
}

TEST_CASE("grid preconditions") {
    CHECK_THROWS_AS(build_grid(0.0, 5), ParameterError);
    CHECK_THROWS_AS(build_grid(1.0, 4), ParameterError);
    CHECK_THROWS_AS(build_grid(1.0, 1), ParameterError);
}

TEST_CASE("fractional order regime guard") {
    CHECK_NOTHROW(check_fractional_order(1, 0.4));
    CHECK_THROWS_AS(check_fractional_order(1, 0.6), UnsupportedRegime);
    CHECK_THROWS_AS(check_fractional_order(1, 0.5), UnsupportedRegime);
    CHECK_THROWS_AS(check_fractional_order(1, 1.2), ParameterError);
    try {
        check_fractional_order(1, 0.6);
    } catch (const UnsupportedRegime& e) {
        CHECK(std::string(e.what()).find("N>2α violated") != std::string::npos);
    }
    CHECK(critical_exponent(1, 0.4) == doctest::Approx(10.0));
}

TEST_CASE("touching-cell integrals against tabulated values") {
    // Reference values from an independent 2-D adaptive quadrature at p = 0.8.
    const auto t = detail::touching_integrals(0.8);
    CHECK(t.i20 == doctest::Approx(0.29923065).epsilon(1e-7));
    CHECK(t.i11 == doctest::Approx(0.19220750).epsilon(1e-7));
}

TEST_CASE("single interior hat against the nested quadrature oracle") {
    const Grid g = build_grid(20.0, 801);
    const QuadraticForm form = assemble_gagliardo(g, 0.4);
    // A covers Ω×Ω; the exact Ω×Ωᶜ part of [φ]² uses φ², not the lumped φ.
    for (const Eigen::Index k : {Eigen::Index{400}, Eigen::Index{123}}) {
        const double full = oracle::hat_seminorm_sq(g.spacing, 0.4);
        const double exterior = oracle::exterior_weight(g, k, 0.4, 2);
        CHECK(form.interior(k, k) == doctest::Approx(full - exterior).epsilon(1e-6));
    }
}

TEST_CASE("exterior weights against quadrature") {
    const Grid g = build_grid(20.0, 801);
    const QuadraticForm form = assemble_gagliardo(g, 0.4);
    for (const Eigen::Index i : {Eigen::Index{0}, Eigen::Index{1}, Eigen::Index{17}, Eigen::Index{400},
                                 Eigen::Index{799}, Eigen::Index{800}}) {
        CHECK(form.exterior_weights[i] == doctest::Approx(oracle::exterior_weight(g, i, 0.4)).epsilon(1e-10));
    }
    CHECK((form.exterior_weights.array() > 0.0).all());
}

TEST_CASE("structure of the interior matrix") {
    const Grid g = build_grid(5.0, 101);
    const QuadraticForm form = assemble_gagliardo(g, 0.4);
    const double scale = form.interior.cwiseAbs().maxCoeff();
    CHECK((form.interior - form.interior.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    // Constants have zero interior energy.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.size());
    CHECK((form.interior * ones).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    CHECK(form.seminorm_sq(Eigen::VectorXd::Zero(g.size())) == 0.0);
    // Positive semidefinite.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(form.interior);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * scale);
    CHECK(form.offdiagonal_nonpositive());
}

TEST_CASE("neighbour coupling changes sign for small alpha") {
    // The adjacent-hat entry is positive for small α, so the discrete cross term loses its sign there.
    const Grid g = build_grid(5.0, 101);
    CHECK_FALSE(assemble_gagliardo(g, 0.05).offdiagonal_nonpositive());
    CHECK(assemble_gagliardo(g, 0.4).offdiagonal_nonpositive());
}

TEST_CASE("Gaussian seminorm against the Fourier oracle") {
    CHECK(oracle::gaussian_seminorm_sq(0.4) == doctest::Approx(oracle::gaussian_seminorm_sq_closed(0.4)).epsilon(1e-9));
    CHECK(oracle::gaussian_seminorm_sq(0.2) == doctest::Approx(oracle::gaussian_seminorm_sq_closed(0.2)).epsilon(1e-9));
    const Grid g = build_grid(20.0, 801);
    const QuadraticForm form = assemble_gagliardo(g, 0.4);
    const Eigen::VectorXd u = (-g.nodes.array().square()).exp();
    CHECK(form.seminorm_sq(u) == doctest::Approx(oracle::gaussian_seminorm_sq(0.4)).epsilon(0.02));
}

TEST_CASE("potential mass") {
    const Grid g = build_grid(1.0, 3);
    const Eigen::VectorXd p = assemble_potential_mass(g, Eigen::VectorXd::Ones(3));
    CHECK(p.dot(Eigen::VectorXd::Ones(3)) == doctest::Approx(2.0).epsilon(1e-12));
    Eigen::VectorXd bad = Eigen::VectorXd::Ones(3);
    bad[1] = 0.0;
    CHECK_THROWS_AS(assemble_potential_mass(g, bad), HypothesisViolation);
}

TEST_CASE("norm identities") {
    const Grid g = build_grid(10.0, 201);
    const QuadraticForm form = assemble_form(g, 0.4, Eigen::VectorXd::Ones(g.size()));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd u = oracle::random_state(g, rng);
        const Eigen::VectorXd v = oracle::random_state(g, rng);
        CHECK(form.norm_sq(3.5 * u) == doctest::Approx(12.25 * form.norm_sq(u)).epsilon(1e-12));
        const double polar = (form.norm_sq(u + v) - form.norm_sq(u - v)) / 4.0;
        CHECK(form.inner(u, v) == doctest::Approx(polar).epsilon(1e-10));
        CHECK(form.apply(u).dot(v) == doctest::Approx(form.inner(u, v)).epsilon(1e-12));
    }
    CHECK(form.norm_sq(Eigen::VectorXd::Zero(g.size())) == 0.0);
    CHECK_THROWS_AS(static_cast<void>(form.kernel_weight(3, 3)), ParameterError);
    CHECK(form.kernel_weight(3, 4) == doctest::Approx(-form.interior(3, 4) / 2.0));
}

TEST_CASE("diagnostic CSV output") {
    const Grid g = build_grid(1.0, 5);
    const QuadraticForm form = assemble_form(g, 0.4, Eigen::VectorXd::Ones(5));
    std::ostringstream a;
    write_form_csv(form, a);
    CHECK(a.str().rfind("i,j,value\n", 0) == 0);
    std::ostringstream w;
    write_weights_csv(form, w);
    CHECK(w.str().rfind("i,x,exterior,potential\n", 0) == 0);
}
