#include "doctest.h"

#include <cmath>

#include "oulab/spectral.hpp"
#include "test_oracles.hpp"

using namespace oulab;

namespace {
SpectralField random_poly(SplitMix64& rng, int dim, int D) {
    SpectralField u(dim, D);
    for (double& c : u.coeffs()) c = rng.next_symmetric();
    return u;
}
}  // namespace

TEST_CASE("projection of basis elements") {
    const GaussianGrid g = GaussianGrid::build_gamma(1, 8);

    // f = x -> unit coefficient on he_1
    SpectralField fx = project([](const Point& p) { return p[0]; }, 4, g);
    const std::array<int, 1> i1{1};
    CHECK(fx.coeff(i1) == doctest::Approx(1.0).epsilon(1e-13));
    const std::array<int, 1> i0{0}, i2{2}, i3{3};
    CHECK(std::abs(fx.coeff(i0)) < 1e-13);
    CHECK(std::abs(fx.coeff(i2)) < 1e-13);

    // f = x^2 = He_0 + He_2 -> coefficients {he_0: 1, he_2: sqrt(2)}
    SpectralField fx2 = project([](const Point& p) { return p[0] * p[0]; }, 4, g);
    CHECK(fx2.coeff(i0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fx2.coeff(i2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    // f = He_3 / sqrt(6) -> unit coefficient on index 3
    SpectralField fh3 = project([](const Point& p) { return hermite_He(3, p[0]) / std::sqrt(6.0); }, 4, g);
    CHECK(fh3.coeff(i3) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("projection requires enough nodes and a unit grid") {
    CHECK_THROWS_AS(project([](const Point&) { return 1.0; }, 8, GaussianGrid::build_gamma(1, 4)), ConfigError);
    CHECK_THROWS_AS(project([](const Point&) { return 1.0; }, 2, GaussianGrid::build_scaled(1, 8, 0.5)), ConfigError);
}

TEST_CASE("Parseval on random polynomials") {
    SplitMix64 rng(7);
    for (int dim : {1, 2, 3}) {
        const int D = 5;
        const GaussianGrid g = GaussianGrid::build_gamma(dim, 2 * D + 2);
        for (int rep = 0; rep < 5; ++rep) {
            SpectralField u = random_poly(rng, dim, D);
            const double quad = integrate_gamma([&](const Point& p) { return u.evaluate(p) * u.evaluate(p); }, g);
            CHECK(quad == doctest::Approx(u.norm() * u.norm()).epsilon(1e-10));
        }
    }
}

TEST_CASE("projection round-trips random polynomials exactly") {
    SplitMix64 rng(11);
    for (int dim : {1, 2, 3}) {
        const int D = 4;
        const GaussianGrid g = GaussianGrid::build_gamma(dim, D + 1);
        SpectralField u = random_poly(rng, dim, D);
        SpectralField back = project([&](const Point& p) { return u.evaluate(p); }, D, g);
        for (std::size_t i = 0; i < u.coeff_count(); ++i)
            CHECK(back.coeffs()[i] == doctest::Approx(u.coeffs()[i]).epsilon(1e-11));
    }
}

TEST_CASE("gradient in coefficient space") {
    // u = He_1 -> constant 1
    const std::array<int, 1> i0{0}, i1{1}, i2{2};
    SpectralField he1 = SpectralField::hermite_mode(1, i1, 1.0, 0.0, 3);
    CHECK(he1.derivative(0).coeff(i0) == doctest::Approx(1.0));

    // u = He_2 (coefficient sqrt(2) on he_2) -> derivative 2 He_1
    SpectralField he2 = SpectralField::hermite_mode(1, i2, std::sqrt(2.0), 0.0, 3);
    SpectralField d = he2.derivative(0);
    CHECK(d.coeff(i1) == doctest::Approx(2.0).epsilon(1e-14));

    // constant -> zero field
    SpectralField c = SpectralField::hermite_mode(1, i0, 3.5, 0.0, 3);
    CHECK(c.derivative(0).norm() == 0.0);
}

TEST_CASE("gradient commutes with projection on polynomials") {
    SplitMix64 rng(23);
    for (int dim : {1, 2, 3}) {
        const int D = 4;
        const GaussianGrid g = GaussianGrid::build_gamma(dim, D + 2);
        SpectralField u = random_poly(rng, dim, D);
        for (int axis = 0; axis < dim; ++axis) {
            // analytic derivative by finite differences of the evaluated field
            SpectralField d_spec = u.derivative(axis);
            SpectralField d_proj = project(
                [&](const Point& p) {
                    const double h = 1e-5;
                    Point pp = p, pm = p;
                    pp[axis] += h;
                    pm[axis] -= h;
                    return (u.evaluate(pp) - u.evaluate(pm)) / (2 * h);
                },
                D, g);
            for (std::size_t i = 0; i < d_spec.coeff_count(); ++i)
                CHECK(d_spec.coeffs()[i] == doctest::Approx(d_proj.coeffs()[i]).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("synthesis agrees with pointwise evaluation on scaled grids") {
    SplitMix64 rng(31);
    SpectralField u = random_poly(rng, 2, 3);
    const GaussianGrid comp = GaussianGrid::build_scaled(2, 6, 0.17);
    const std::vector<double> nodal = synthesize(u, comp);
    for (std::size_t i = 0; i < comp.size(); i += 7)
        CHECK(nodal[i] == doctest::Approx(u.evaluate(comp.node(i))).epsilon(1e-12));
}

TEST_CASE("resized fields keep the common coefficient box") {
    SplitMix64 rng(43);
    SpectralField u = random_poly(rng, 2, 3);
    SpectralField big = u.resized(5);
    SpectralField back = big.resized(3);
    for (std::size_t i = 0; i < u.coeff_count(); ++i) CHECK(u.coeffs()[i] == back.coeffs()[i]);
}
