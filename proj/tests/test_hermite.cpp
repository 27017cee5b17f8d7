#include "doctest.h"

#include <cmath>

#include "oulab/hermite.hpp"
#include "test_oracles.hpp"

using namespace oulab;

TEST_CASE("two-point rule matches the closed-form solution of the 2x2 Jacobi eigenproblem") {
    // J = [[0,1],[1,0]] has eigenvalues -1, +1 with equal first components
    auto rule = gauss_hermite(2);
    CHECK(rule->nodes[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(rule->nodes[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rule->weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rule->weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("weights sum to one and nodes are symmetric for every m") {
    for (int m : {2, 3, 5, 16, 33, 64, 128, 256}) {
        auto rule = gauss_hermite(m);
        double total = 0;
        for (double w : rule->weights) total += w;
        CHECK(std::abs(total - 1.0) < 1e-12);
        for (int i = 0; i < m; ++i) {
            CHECK(rule->nodes[static_cast<std::size_t>(i)] ==
                  -rule->nodes[static_cast<std::size_t>(m - 1 - i)]);
            CHECK(rule->weights[static_cast<std::size_t>(i)] ==
                  rule->weights[static_cast<std::size_t>(m - 1 - i)]);
        }
    }
}

TEST_CASE("quadrature reproduces double-factorial moments up to degree 2m-1") {
    // tolerance is relative to the L^1 scale of the integrand; the odd-degree
    // sums cancel terms that grow like |x_max|^k
    for (int m : {2, 4, 7, 16, 64}) {
        auto rule = gauss_hermite(m);
        const int kmax = std::min(2 * m - 1, 25);
        for (int k = 0; k <= kmax; ++k) {
            double acc = 0, scale = 0;
            for (int j = 0; j < m; ++j) {
                const double term = rule->weights[static_cast<std::size_t>(j)] *
                                    std::pow(rule->nodes[static_cast<std::size_t>(j)], k);
                acc += term;
                scale += std::abs(term);
            }
            const double expect = testing::gaussian_moment_1d(k);
            CHECK(std::abs(acc - expect) < 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("rule stays stable at m = 256") {
    auto rule = gauss_hermite(256);
    // spot moments well inside the exactness budget
    for (int k : {2, 10, 24, 40}) {
        double acc = 0;
        for (int j = 0; j < 256; ++j)
            acc += rule->weights[static_cast<std::size_t>(j)] * std::pow(rule->nodes[static_cast<std::size_t>(j)], k);
        const double expect = testing::gaussian_moment_1d(k);
        CHECK(std::abs(acc / expect - 1.0) < 1e-8);
    }
}

TEST_CASE("node count bounds") {
    CHECK_THROWS_AS(gauss_hermite(1), ConfigError);
    CHECK_THROWS_AS(gauss_hermite(257), ConfigError);
}

TEST_CASE("normalized recurrence matches He_k / sqrt(k!)") {
    std::vector<double> he(11);
    for (double x : {-2.3, -0.5, 0.0, 0.7, 1.9}) {
        hermite_normalized(x, 10, he);
        double fact = 1.0;
        for (int k = 0; k <= 10; ++k) {
            if (k > 0) fact *= k;
            CHECK(he[static_cast<std::size_t>(k)] ==
                  doctest::Approx(hermite_He(k, x) / std::sqrt(fact)).epsilon(1e-12));
        }
    }
}

TEST_CASE("He_k' = k He_{k-1}") {
    const double h = 1e-6;
    for (int k : {1, 2, 3, 5, 8}) {
        for (double x : {-1.1, 0.3, 2.0}) {
            const double fd = (hermite_He(k, x + h) - hermite_He(k, x - h)) / (2 * h);
            CHECK(fd == doctest::Approx(k * hermite_He(k - 1, x)).epsilon(1e-6));
        }
    }
}
