#include <fracnodal/coefficients.hpp>
#include <fracnodal/errors.hpp>

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace fracnodal;

TEST_CASE("logarithmic tail and bumps") {
    CHECK(log_tail(0.0) == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-15));
    CHECK(log_tail(-3.0) == log_tail(3.0));
    CHECK(bump_profile(0.0) == 0.0);
    CHECK(bump_profile(1.0) == 1.0);
    CHECK(bump_profile(2.0 + 0.125) == doctest::Approx(0.5));
    CHECK(bump_profile(2.0 + 0.25) == 0.0);
}

TEST_CASE("hat-averaged bumps keep their mass") {
    // Bumps at n = 1..4 have mass 2^{-n}, even where they are narrower than the grid spacing.
    const Grid g = build_grid(4.6, 47);
    const Eigen::VectorXd h3 = bump_family_averages(g);
    const double mass = h3.dot(g.nodal_mass());
    CHECK(mass == doctest::Approx(0.5 + 0.25 + 0.125 + 0.0625).epsilon(1e-12));
    CHECK((h3.array() >= 0.0).all());
}

TEST_CASE("presets") {
    const Grid g = build_grid(20.0, 801);
    CoefficientOptions o;
    const auto constant = make_coefficients(g, o);
    CHECK((constant.v.array() == 1.0).all());
    CHECK((constant.k.array() == 1.0).all());

    o.preset = PotentialPreset::log_tail_with_bumps;
    const auto first = make_coefficients(g, o);
    CHECK(first.v == first.k);
    CHECK(first.v[400] == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-15));

    o.h4_variant = true;
    o.pair_m = 3.0;
    const auto second = make_coefficients(g, o);
    CHECK(second.k == first.k);
    CHECK(second.v[800] < second.k[800]);
    o.pair_m = 12.0;
    CHECK_THROWS_AS(make_coefficients(g, o), ParameterError);

    CoefficientOptions bad;
    bad.constant_value = -1.0;
    CHECK_THROWS_AS(make_coefficients(g, bad), HypothesisViolation);
    for (const auto p : {PotentialPreset::constant, PotentialPreset::log_tail, PotentialPreset::log_tail_with_bumps,
                         PotentialPreset::from_file}) {
        CHECK(parse_preset(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_preset("gaussian"), ParameterError);
}

TEST_CASE("coefficients from CSV") {
    const Grid g = build_grid(1.0, 5);
    std::istringstream in("x,V,K\n-1,1,2\n0,3,2\n1,1,2\n");
    const auto pair = read_coefficients_csv(in, g);
    CHECK(pair.v[1] == doctest::Approx(2.0));
    CHECK(pair.v[2] == doctest::Approx(3.0));
    CHECK(pair.k[4] == doctest::Approx(2.0));

    std::istringstream short_range("x,V,K\n-0.5,1,1\n1,1,1\n");
    CHECK_THROWS_AS(read_coefficients_csv(short_range, g), ParameterError);
    std::istringstream no_header("-1,1,1\n1,1,1\n");
    CHECK_THROWS_AS(read_coefficients_csv(no_header, g), ParameterError);
}
