#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oulab/frequency.hpp"
#include "test_oracles.hpp"

using namespace oulab;

namespace {
const std::array<int, 1> kI0{0}, kI1{1}, kI2{2};

TraceRequest basic_request(int dim, int nodes, double T0) {
    TraceRequest req;
    req.dim = dim;
    req.nodes = nodes;
    req.T0 = T0;
    req.A = 1.0;
    return req;
}
}  // namespace

TEST_CASE("horizon formula") {
    // independent arithmetic: T0 = log1p(1/(8(A+pi)))/2
    const HorizonT0 h = compute_T0(1.0, 10.0);
    CHECK(h.value == doctest::Approx(0.5 * std::log1p(1.0 / (8.0 * (1.0 + std::numbers::pi)))).epsilon(1e-15));
    CHECK(h.value == doctest::Approx(0.014868).epsilon(1e-4));
    CHECK(1.0 / (8.0 * (1.0 + std::numbers::pi)) == doctest::Approx(0.030182).epsilon(1e-4));

    // small T wins the min
    CHECK(compute_T0(1.0, 0.01).value == doctest::Approx(0.005).epsilon(1e-15));

    // monotone decreasing in A, always below 1/8
    double prev = compute_T0(0.01, 10.0).value;
    CHECK(prev < 0.125);
    for (double A : {0.1, 1.0, 10.0, 1e4}) {
        const double cur = compute_T0(A, 10.0).value;
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(compute_T0(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(compute_T0(1.0, 0.0), ConfigError);
}

TEST_CASE("geometric tau grid") {
    const std::vector<double> g = geometric_tau_grid(0.01);
    CHECK(g.size() == 40);
    CHECK(g.front() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(g.back() == doctest::Approx(9e-3).epsilon(1e-12));
    for (std::size_t k = 1; k < g.size(); ++k) {
        CHECK(g[k] > g[k - 1]);
        // ratio constant (log-spaced)
        if (k >= 2) CHECK(g[k] / g[k - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-10));
    }
}

TEST_CASE("H, I, N closed forms for the degree-1 eigen-solution") {
    // u(x,t) = x e^{-t}; at t = -tau the he_1 coefficient is e^{tau}
    const double tau = 0.05;
    const double s = variance_s(tau);
    SpectralField u = SpectralField::hermite_mode(1, kI1, std::exp(tau), -tau, 4);
    const GaussianGrid comp = composite_grid(1, 16, tau);

    const double H = H_of_tau(u, tau, comp);
    CHECK(H == doctest::Approx(std::exp(2 * tau) * s).epsilon(1e-12));
    CHECK(H == doctest::Approx(0.10517091807564763).epsilon(1e-12));  // e^{0.1} - 1

    const double I = I_of_tau(u, tau, comp);
    CHECK(I == doctest::Approx(std::exp(2 * tau)).epsilon(1e-12));

    CHECK(N_of_tau(H, I, tau) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("H of a constant is its square, zero field is degenerate") {
    const double tau = 0.2;
    const GaussianGrid comp = composite_grid(1, 16, tau);
    SpectralField k = SpectralField::hermite_mode(1, kI0, 3.0, -tau, 2);
    CHECK(H_of_tau(k, tau, comp) == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(I_of_tau(k, tau, comp) == doctest::Approx(0.0));
    CHECK(N_of_tau(9.0, 0.0, tau) == 0.0);

    SpectralField z(1, 2, -tau);
    CHECK(H_of_tau(z, tau, comp) == 0.0);
    CHECK_THROWS_AS(N_of_tau(0.0, 0.0, tau), EvalError);
}

TEST_CASE("singular potential term in I: quadrature brackets the exact 1/s") {
    // u = 1, V = 1/r^2, n = 3, s = 0.1: exact value 1/s = 10. The integrand has
    // an r^{-2} singularity; tensor quadrature converges slowly from below.
    const double s_target = 0.1;
    const double tau = -0.5 * std::log1p(-s_target);
    Potential V;
    V.kind = Potential::Kind::singular_radial;
    V.q = 2.0;
    V.L = 1.0;
    std::array<int, 3> zero{0, 0, 0};
    SpectralField one = SpectralField::hermite_mode(3, zero, 1.0, -tau, 2);
    const GaussianGrid comp = composite_grid(3, 64, tau);
    const double I = I_of_tau(one, tau, comp, &V);
    CHECK(I > 0.75 * 10.0);
    CHECK(I < 10.0 * (1.0 + 1e-4));

    // the exact constant E[1/|z|^2] = 1 from the independent radial reduction
    CHECK(testing::inverse_square_moment_3d() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("frequency of the degree-2 eigen-solution matches the moment oracle") {
    const double tau = 0.05;
    const double s = variance_s(tau);
    // u(x,t) = He_2(x) e^{-2t}: coefficient sqrt(2) e^{2 tau} on he_2 at t = -tau
    SpectralField u = SpectralField::hermite_mode(1, kI2, std::sqrt(2.0) * std::exp(2 * tau), -tau, 4);
    const GaussianGrid comp = composite_grid(1, 16, tau);
    const double H = H_of_tau(u, tau, comp);
    const double I = I_of_tau(u, tau, comp);

    // moment oracle: E[(x^2-1)^2] = 3 s^2 - 2 s + 1 under variance s
    const double e4 = 3 * s * s, e2 = s;
    CHECK(H == doctest::Approx(std::exp(4 * tau) * (e4 - 2 * e2 + 1)).epsilon(1e-12));
    const double N = N_of_tau(H, I, tau);
    CHECK(N == doctest::Approx(4 * s * s / (3 * s * s - 2 * s + 1)).epsilon(1e-12));
    CHECK(N == doctest::Approx(0.04328611925715781).epsilon(1e-9));
}

TEST_CASE("pure traces: constants, monotonicity, closed forms") {
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);

    SUBCASE("degree-1 eigenmode has N identically 1") {
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4), -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 32, t0.value));
        for (double nv : tr.N) CHECK(std::abs(nv - 1.0) < 1e-8);
        CHECK(check_monotone(tr, 1e-14).pass);  // equality case up to rounding
        CHECK(check_reconstruction(tr).pass);
    }

    SUBCASE("degree-2 eigenmode: N strictly increasing, dN/ds > 0 oracle") {
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI2, 1.0, 0.0, 4), -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 32, t0.value));
        for (std::size_t k = 1; k < tr.N.size(); ++k) CHECK(tr.N[k] > tr.N[k - 1]);
        // oracle: dN/ds = 8 s (1-s) / (3 s^2 - 2 s + 1)^2 > 0 on (0,1)
        for (double tau : {grid.front(), grid[20], grid.back()}) {
            const double s = variance_s(tau);
            CHECK(8 * s * (1 - s) / std::pow(3 * s * s - 2 * s + 1, 2) > 0.0);
        }
        CHECK(check_monotone(tr, 1e-12).pass);
    }

    SUBCASE("zero field flags degenerate at the first point") {
        FieldProvider p = make_pure_provider(SpectralField(1, 4), -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 16, t0.value));
        CHECK(tr.truncated);
        CHECK(tr.tau.size() == 1);
        CHECK(tr.flags[0] == "degenerate");
    }

    SUBCASE("H' = 2I identity on a mixture trace") {
        SpectralField u0 = SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4);
        u0.add_coeff(kI2, 0.5);
        FieldProvider p = make_pure_provider(u0, -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 32, t0.value));
        CHECK(check_H_prime_identity(tr, 5e-3).pass);
    }
}

TEST_CASE("shifted frequency trace") {
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);

    // eigenmodes: the time shift cancels, N_s == N
    FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI2, 1.0, 0.0, 4), -t0.value);
    TraceRequest req = basic_request(1, 32, t0.value);
    const FrequencyTrace base = trace_frequency(p, grid, req);
    req.shift = -t0.value / 3.0;
    FieldProvider p2 = make_pure_provider(SpectralField::hermite_mode(1, kI2, 1.0, 0.0, 4), -2.0 * t0.value);
    const FrequencyTrace shifted = trace_frequency(p2, grid, req);
    for (std::size_t k = 0; k < base.N.size(); ++k)
        CHECK(shifted.N[k] == doctest::Approx(base.N[k]).epsilon(1e-10));

    // mixtures stay monotone under shift (pure flow)
    SpectralField u0 = SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4);
    u0.add_coeff(kI2, 0.7);
    FieldProvider p3 = make_pure_provider(u0, -2.0 * t0.value);
    const FrequencyTrace trs = trace_frequency(p3, grid, req);
    CHECK(check_monotone(trs, 1e-10).pass);
}

TEST_CASE("monotone check flags an injected dip") {
    FrequencyTrace tr;
    tr.tau = {0.01, 0.02, 0.03, 0.04};
    tr.N = {1.0, 1.1, 1.1 - 1e-5, 1.2};  // dip of 10 x tol at index 2
    tr.H = {1, 1, 1, 1};
    tr.I = {1, 1, 1, 1};
    tr.N_prime = {0, 0, 0, 0};
    tr.flags = {"", "", "", ""};
    const CheckReport rep = check_monotone(tr, 1e-6);
    CHECK_FALSE(rep.pass);
    CHECK(rep.lhs == doctest::Approx(1e-5).epsilon(1e-6));
    CHECK(rep.detail.find("index 1") != std::string::npos);
}

TEST_CASE("almost-monotone check reduces to monotone at L = 0") {
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);
    SpectralField u0 = SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4);
    u0.add_coeff(kI2, 0.5);
    FieldProvider p = make_pure_provider(u0, -t0.value);
    const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 32, t0.value));
    const CheckReport rep = check_almost_monotone(tr, 0.0, 1, 1e-9);
    CHECK(rep.pass);  // C = 0: pure pairwise monotonicity of N+1
}

TEST_CASE("H lower bound: closed-form and synthetic traces") {
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);

    SUBCASE("degree-1 eigen-solution, elementary inequality and default C2") {
        // H(tau) = e^{2 tau} - 1 >= 1 - e^{-2 tau} holds with C2 = 1 and unit constant
        for (double tau : grid) CHECK(std::expm1(2 * tau) >= variance_s(tau));
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4), -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 32, t0.value));
        const HBoundReport hb = check_H_lower_bound(tr, 0.5 * t0.value, std::nullopt, 1e-8);
        CHECK(hb.C2 >= 2.0);  // 2 max(1,.) (sup N + 1) e^{2 tau0} with sup N = 1
        CHECK(hb.sharp.pass);
        CHECK(hb.tau_form.pass);
    }

    SUBCASE("constant solution passes for any C2 >= 0") {
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI0, 2.0, 0.0, 2), -t0.value);
        const FrequencyTrace tr = trace_frequency(p, grid, basic_request(1, 16, t0.value));
        for (double C2 : {0.0, 1.0, 5.0}) {
            const HBoundReport hb = check_H_lower_bound(tr, 0.5 * t0.value, C2, 1e-8);
            CHECK(hb.sharp.pass);
            CHECK(hb.tau_form.pass);
        }
    }

    SUBCASE("synthetic tau^{2K} trace fails the tau^{C2} form exactly when 2K > C2") {
        std::vector<double> taus;
        for (int k = 0; k < 50; ++k)
            taus.push_back(std::exp(std::log(1e-6) + (std::log(0.01) - std::log(1e-6)) * k / 49.0));
        for (int K : {1, 2, 3}) {
            FrequencyTrace tr;
            tr.tau = taus;
            for (double tau : taus) {
                tr.H.push_back(std::pow(tau, 2 * K));
                tr.I.push_back(0);
                tr.N.push_back(0);
                tr.N_prime.push_back(0);
                tr.flags.push_back("");
            }
            for (int C2 : {1, 2, 3, 4, 5, 6, 7, 8}) {
                const HBoundReport hb = check_H_lower_bound(tr, 0.01, static_cast<double>(C2), 1e-8);
                CHECK(hb.tau_form.pass == (2 * K <= C2));
            }
        }
    }
}

TEST_CASE("duality pairing") {
    SUBCASE("pure flow, degree-1 mode: D == e^{2S}") {
        const double S = 0.005;
        // pose the data at t = 0 so u(t) = He_1 e^{-t} exactly (the pure
        // provider evaluates polynomials backward in time exactly)
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4), 0.0);
        std::vector<double> grid;
        for (int k = 0; k < 12; ++k) grid.push_back((0.1 + 1.8 * k / 11.0) * S);
        const DualityResult dr = duality_pairing(p, S, grid, 1e-10, 0.0);
        CHECK(dr.report.pass);
        for (double d : dr.D) CHECK(d == doctest::Approx(std::exp(2 * S)).epsilon(1e-13));
    }

    SUBCASE("zero field: D identically zero") {
        FieldProvider p = make_pure_provider(SpectralField(1, 3), -1.0);
        std::vector<double> grid{0.1, 0.2, 0.3};
        const DualityResult dr = duality_pairing(p, 0.25, grid, 1e-10, 1e-15);
        for (double d : dr.D) CHECK(d == 0.0);
        CHECK(dr.report.pass);
    }

    SUBCASE("V = r^2, evolved data: D constant under dt refinement") {
        // the pairing needs only time independence and self-adjointness, so the
        // full quadratic potential is fine here
        SplitMix64 rng(77);
        Potential V;
        V.kind = Potential::Kind::smooth_radial;
        V.v = [](double r) { return r * r; };
        V.v_prime = [](double r) { return 2.0 * r; };
        V.L = 1.0;
        const double S = 0.004;
        std::vector<double> grid;
        for (int k = 0; k < 10; ++k) grid.push_back((0.1 + 1.8 * k / 9.0) * S);
        SpectralField u0(1, 8);
        for (double& c : u0.coeffs()) c = rng.next_symmetric();

        double prev_dev = -1.0;
        for (double dt : {S / 8.0, S / 16.0}) {
            EvolutionConfig cfg{dt, 8, 16};
            FieldProvider p = make_evolved_provider(u0, -2.0 * S, cfg, nullptr, &V);
            const DualityResult dr = duality_pairing(p, S, grid, 1e-6, 0.0);
            double dev = 0;
            for (double d : dr.D) dev = std::max(dev, std::abs(d - dr.D[0]));
            const double rel = dev / std::abs(dr.D[0]);
            CHECK(rel < 1e-6);
            if (prev_dev >= 0.0) CHECK(rel <= prev_dev + 1e-12);
            prev_dev = rel;
        }
    }
}

TEST_CASE("trace request validation") {
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4), -t0.value);
    std::vector<double> bad = {0.02, 0.01};
    CHECK_THROWS_AS(trace_frequency(p, bad, basic_request(1, 16, t0.value)), ConfigError);
    std::vector<double> neg = {-0.01, 0.01};
    CHECK_THROWS_AS(trace_frequency(p, neg, basic_request(1, 16, t0.value)), ConfigError);
}

TEST_CASE("evolved provider refuses backward queries but serves its cache") {
    SpectralField u0 = SpectralField::hermite_mode(1, kI1, 1.0, 0.0, 4);
    EvolutionConfig cfg{1e-3, 4, 8};
    LowerOrder lo;
    lo.L = 0.0;
    FieldProvider p = make_evolved_provider(u0, -0.1, cfg, &lo, nullptr);
    const SpectralField a = p(-0.05);
    const SpectralField b = p(0.0);
    const SpectralField a_again = p(-0.05);  // cached
    CHECK(a_again.coeff(kI1) == a.coeff(kI1));
    CHECK_THROWS_AS(p(-0.07), ConfigError);
}
