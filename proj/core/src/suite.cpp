#include "oulab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace oulab {

namespace {

CheckReport summary_row(const char* name, const char* anchor, double lhs, double rhs, bool pass_when_leq) {
    CheckReport r;
    r.check = name;
    r.anchor = anchor;
    r.lhs = lhs;
    r.rhs = rhs;
    r.pass = pass_when_leq ? lhs <= rhs : lhs >= rhs;
    r.margin = pass_when_leq ? rhs - lhs : lhs - rhs;
    return r;
}

/// Random field with total degree <= deg_total on the (D+1)^n tensor set.
SpectralField random_field(SplitMix64& rng, int dim, int D, int deg_total) {
    SpectralField u(dim, D);
    auto c = u.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (u.total_degree(i) <= deg_total) c[i] = rng.next_symmetric();
    }
    return u;
}

int nodes_for_dim(int dim) { return dim == 1 ? 32 : (dim == 2 ? 16 : 12); }

}  // namespace

std::vector<CheckReport> battery_identities(const SuiteOptions& opt) {
    SplitMix64 rng(opt.seed ^ 0x9e1dULL);
    double worst_mass = 0.0, worst_matrix = 0.0, min_order = std::numeric_limits<double>::infinity();
    double worst_fwd = 0.0;

    for (int n = 1; n <= 3; ++n) {
        for (int sample = 0; sample < 50; ++sample) {
            const double tau = std::exp(rng.next_in(std::log(5e-3), std::log(5.0)));
            Point x(n);
            for (int a = 0; a < n; ++a) x[a] = rng.next_in(-2.0, 2.0);

            const KernelParams kp = KernelParams::centered(n, tau);
            const GaussianGrid comp = composite_grid(n, 24, tau);
            worst_mass = std::max(worst_mass, std::abs(kernel_mass(kp, comp) - 1.0));

            const double mval = mehler_backward(kp, x).value;
            worst_matrix = std::max(worst_matrix, matrix_identity_residual(kp, x).max_abs() / mval);

            // O(h^2) decay of the backward-equation residual; tau capped so the
            // residual stays well above rounding noise
            const double tau_h = std::min(tau, 1.0);
            const KernelParams kp_h = KernelParams::centered(n, tau_h);
            const double h = std::min(1e-4, tau_h / 10.0);
            const double r1 = backward_heat_residual(kp_h, x, h);
            const double r2 = backward_heat_residual(kp_h, x, h / 2.0);
            if (r2 > 0.0) min_order = std::min(min_order, std::log2(r1 / r2));
        }
    }

    const GaussianGrid unit = GaussianGrid::build_gamma(1, 64);
    {
        Point x{0.5};
        worst_fwd = std::max(worst_fwd, std::abs(kernel_mass_forward(x, 0.3, unit) - 1.0));
    }
    for (int sample = 0; sample < 20; ++sample) {
        Point x{rng.next_in(-1.0, 1.0)};
        worst_fwd = std::max(worst_fwd, std::abs(kernel_mass_forward(x, rng.next_in(0.25, 2.0), unit) - 1.0));
    }

    std::vector<CheckReport> rows;
    rows.push_back(summary_row("kernel_mass", "Eq. 2.3", worst_mass, 1e-10, true));
    rows.back().detail = "max |mass - 1| over 150 random (x, tau), n in {1,2,3}";
    rows.push_back(summary_row("kernel_mass_forward", "Eq. 2.3", worst_fwd, 1e-10, true));
    rows.push_back(summary_row("matrix_identity", "Eq. 2.7", worst_matrix, 1e-10, true));
    rows.back().detail = "max entrywise residual / M";
    rows.push_back(summary_row("backward_heat_order", "Eq. 2.6", min_order, 1.9, false));
    rows.back().detail = "min measured finite-difference order";
    return rows;
}

std::vector<CheckReport> battery_monotonicity(const SuiteOptions& opt) {
    std::vector<CheckReport> rows;
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);

    // eigen calibration
    {
        const std::array<int, 1> a1{1};
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, a1, 1.0, 0.0, 4), -t0.value);
        TraceRequest req;
        req.dim = 1;
        req.nodes = 32;
        req.T0 = t0.value;
        req.A = 1.0;
        req.scenario = "eigen1";
        const FrequencyTrace tr = trace_frequency(p, grid, req);
        double worst = 0.0;
        for (double nv : tr.N) worst = std::max(worst, std::abs(nv - 1.0));
        rows.push_back(summary_row("eigen1_frequency", "Eq. 2.10", worst, 1e-8, true));
        rows.back().detail = "max |N - 1| for the degree-1 eigen-solution";
    }
    {
        const std::array<int, 1> a2{2};
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, a2, 1.0, 0.0, 4), -t0.value);
        TraceRequest req;
        req.dim = 1;
        req.nodes = 32;
        req.T0 = t0.value;
        req.A = 1.0;
        req.scenario = "eigen2";
        const FrequencyTrace tr = trace_frequency(p, grid, req);
        double worst = 0.0;
        for (std::size_t k = 0; k < tr.tau.size(); ++k) {
            const double s = variance_s(tr.tau[k]);
            const double expect = 4.0 * s * s / (3.0 * s * s - 2.0 * s + 1.0);
            worst = std::max(worst, std::abs(tr.N[k] - expect));
        }
        rows.push_back(summary_row("eigen2_frequency", "Eq. 2.10", worst, 1e-7, true));
        rows.back().detail = "max |N - closed form| for the degree-2 eigen-solution";
    }

    // Theorem 1.2: 100 random polynomial data under the pure flow
    {
        SplitMix64 rng(opt.seed ^ 0x3a7fULL);
        double worst_drop = -std::numeric_limits<double>::infinity();
        double worst_recon = 0.0;
        for (int i = 0; i < 100; ++i) {
            const int n = 1 + i % 3;
            SpectralField u0 = random_field(rng, n, 8, 8);
            FieldProvider p = make_pure_provider(std::move(u0), -t0.value);
            TraceRequest req;
            req.dim = n;
            req.nodes = nodes_for_dim(n);
            req.T0 = t0.value;
            req.A = 1.0;
            req.threads = opt.threads;
            const FrequencyTrace tr = trace_frequency(p, grid, req);
            const CheckReport mono = check_monotone(tr, 1e-7);
            worst_drop = std::max(worst_drop, mono.lhs);
            worst_recon = std::max(worst_recon, check_reconstruction(tr).lhs);
        }
        rows.push_back(summary_row("monotone_random_pure", "Theorem 1.2", worst_drop, 1e-7, true));
        rows.back().detail = "max N-drop over 100 random traces";
        rows.push_back(summary_row("reconstruction", "Eq. 2.10", worst_recon, 1e-12, true));
    }

    // Lemma 3.2: 25 bounded-drift / linear-growth-c scenarios
    {
        SplitMix64 rng(opt.seed ^ 0x52bULL);
        const double Ls[3] = {0.25, 0.5, 1.0};
        double worst_ratio = 0.0, worst_diff = -std::numeric_limits<double>::infinity();
        double worst_lemma22 = std::numeric_limits<double>::infinity();
        bool all_pass = true;
        for (int i = 0; i < 25; ++i) {
            Scenario sc;
            sc.name = "drift_" + std::to_string(i);
            sc.dim = i < 15 ? 1 : (i < 21 ? 2 : 3);
            sc.mode = Mode::lower_order;
            sc.growth = GrowthClass{1.0, 1024.0};  // random |coeff| <= 1 data stays under B e^{|x|^2}
            const double L = Ls[i % 3];
            sc.lower.L = L;
            const int bkind = i % 4;
            const double bmag = 0.9 * L;
            if (bkind == 0)
                sc.lower.b[0] = [bmag](const Point&, double) { return bmag; };
            else if (bkind == 1)
                sc.lower.b[0] = [bmag](const Point&, double) { return -bmag; };
            else if (bkind == 2)
                sc.lower.b[0] = [bmag](const Point& p, double) {
                    double s = 0;
                    for (int a = 0; a < p.dim; ++a) s += p[a];
                    return bmag * std::sin(s);
                };
            // bkind == 3 leaves b = 0
            const int ckind = i % 3;
            const double cmag = 0.8 * L;
            if (ckind == 1)
                sc.lower.c = [cmag](const Point&, double) { return cmag; };
            else if (ckind == 2)
                sc.lower.c = [cmag](const Point& p, double) {
                    double s = 0;
                    for (int a = 0; a < p.dim; ++a) s += p[a];
                    return cmag * (1.0 + p.norm()) * std::sin(s);
                };
            sc.grid.degree = 6;
            sc.grid.nodes = sc.dim == 1 ? 24 : (sc.dim == 2 ? 14 : 12);
            sc.grid.dt = t0.value / 256.0;
            sc.grid.refine_tol = 1e-6;
            sc.grid.max_refine = 3;
            // random polynomial data, total degree <= 4
            SpectralField u0 = random_field(rng, sc.dim, 6, 4);
            auto c = u0.coeffs();
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[k] != 0.0) {
                    std::vector<int> alpha(static_cast<std::size_t>(sc.dim));
                    std::size_t rest = k;
                    for (int a = sc.dim - 1; a >= 0; --a) {
                        alpha[static_cast<std::size_t>(a)] = static_cast<int>(rest % 7);
                        rest /= 7;
                    }
                    sc.hermite_terms.emplace_back(c[k], alpha);
                }
            sc.checks.push_back({.name = "almost_monotone", .tol = 1e-5});
            sc.checks.push_back({.name = "lemma22", .tol = 1e-3});
            sc.checks.push_back({.name = "reconstruction"});

            const ScenarioResult res = run_scenario(sc, opt.threads);
            all_pass = all_pass && res.pass;
            for (const auto& r : res.rows) {
                if (r.check == "almost_monotone") {
                    worst_ratio = std::max(worst_ratio, r.lhs);
                    for (const auto& [k, v] : r.inputs)
                        if (k == "worst_differential_excess") worst_diff = std::max(worst_diff, v);
                } else if (r.check == "frequency_derivative_bound") {
                    worst_lemma22 = std::min(worst_lemma22, r.margin);
                }
            }
        }
        CheckReport r = summary_row("almost_monotone_drift", "Lemma 3.2 / Eq. 3.3", worst_ratio, 1.0 + 1e-5, true);
        r.pass = r.pass && all_pass;
        r.detail = "25 scenarios, |b| <= L in {0.25, 0.5, 1}, linear-growth c, constant C = (n+1) L^2";
        r.inputs.emplace_back("worst_differential_excess", worst_diff);
        r.inputs.emplace_back("worst_lemma22_margin", worst_lemma22);
        rows.push_back(r);
    }
    return rows;
}

std::vector<CheckReport> battery_hardy(const SuiteOptions& opt) {
    SplitMix64 rng(opt.seed ^ 0x4a2dULL);
    std::vector<CheckReport> rows;
    const HorizonT0 t0 = compute_T0(1.0, 10.0);
    const std::vector<double> grid = geometric_tau_grid(t0.value);

    double worst_identity = 0.0;
    for (int n = 1; n <= 3; ++n) {
        double min_margin_quad = std::numeric_limits<double>::infinity();
        double min_margin_sing = std::numeric_limits<double>::infinity();
        bool all_quad = true, all_sing = true;
        const int m = nodes_for_dim(n);
        for (int i = 0; i < 100; ++i) {
            const SpectralField u = random_field(rng, n, 8, 8);
            for (double tau : grid) {
                const GaussianGrid comp = composite_grid(n, m, tau);
                CheckReport q = hardy_quadratic(u, tau, comp);
                if (opt.flip_hardy_rhs) {
                    q.rhs = -q.rhs;
                    q.pass = q.lhs <= q.rhs;
                    q.detail = "test hook: RHS sign flipped";
                }
                all_quad = all_quad && q.pass;
                min_margin_quad = std::min(min_margin_quad, q.margin);
                worst_identity = std::max(worst_identity, hardy_proof_identity_gap(u, tau, comp));
                if (n >= 3) {
                    CheckReport s = hardy_singular(u, tau, comp);
                    if (opt.flip_hardy_rhs) {
                        s.rhs = -s.rhs;
                        s.pass = s.lhs <= s.rhs;
                        s.detail = "test hook: RHS sign flipped";
                    }
                    all_sing = all_sing && s.pass;
                    min_margin_sing = std::min(min_margin_sing, s.margin);
                }
            }
        }
        CheckReport q = summary_row(("hardy_quadratic_n" + std::to_string(n)).c_str(), "Lemma 3.1 / Eq. 3.1",
                                    min_margin_quad, 0.0, false);
        q.pass = all_quad;
        q.detail = "min relative margin over 100 random fields x default tau grid";
        rows.push_back(q);
        if (n >= 3) {
            CheckReport s = summary_row("hardy_singular_n3", "Lemma 3.1 / Eq. 3.2", min_margin_sing, 0.0, false);
            s.pass = all_sing;
            s.detail = "min relative margin over 100 random fields x default tau grid";
            rows.push_back(s);
        }
    }
    rows.push_back(summary_row("hardy_proof_identity", "Lemma 3.1 proof", worst_identity, 1e-8, true));
    rows.back().detail = "max relative gap of the integration-by-parts identity";
    return rows;
}

std::vector<CheckReport> battery_vanishing(const SuiteOptions&) {
    std::vector<CheckReport> rows;
    double worst_cnk = 0.0;
    bool all = true;
    double worst_slope_gap = std::numeric_limits<double>::infinity();

    for (int n = 1; n <= 3; ++n) {
        for (int K = 1; K <= 3; ++K) {
            VanishingProbe probe;
            probe.K = K;
            probe.C0 = std::pow(2.0, K - 1);
            probe.T1 = 0.1;
            probe.v = [K](const Point& p, double t) { return std::pow(p.norm_sq() + std::abs(t), K); };
            probe.growth = GrowthClass{1.0, std::pow(4.0, K)};
            const int m = nodes_for_dim(n);
            const GaussianGrid gamma = GaussianGrid::build_gamma(n, m);
            validate_probe(probe, n, gamma);

            const double T0 = compute_T0(probe.growth.A, probe.T1).value;
            const std::vector<double> grid = geometric_tau_grid(T0, 40, 1.0 / 300.0, 0.9);
            const EnvelopeReport env = vanishing_envelope(probe, grid, n, m);
            all = all && env.report.pass;
            worst_slope_gap = std::min(worst_slope_gap, env.slope - (2.0 * K - 0.1));

            // independent 1-D maximization of g(theta) by golden section
            const double p = n + 4.0 * K;
            auto g = [p](double th) { return -p * std::log(th) - 1.0 / (16.0 * th); };
            double a = 1e-6, b = 1.0;
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - gr * (b - a), d = a + gr * (b - a);
            for (int it = 0; it < 200; ++it) {
                if (g(c) > g(d)) b = d; else a = c;
                c = b - gr * (b - a);
                d = a + gr * (b - a);
            }
            const double log_numeric = g(0.5 * (a + b));
            const double rel = std::abs(std::exp(log_numeric - vanishing_log_CnK(n, K)) - 1.0);
            worst_cnk = std::max(worst_cnk, rel);
        }
    }
    CheckReport r = summary_row("vanishing_envelope", "Lemma 4.1", worst_slope_gap, 0.0, false);
    r.pass = all && worst_slope_gap >= 0.0;
    r.detail = "probes K in {1,2,3}, n in {1,2,3}: slope fit and C1 tau^{2K} bound";
    rows.push_back(r);
    rows.push_back(summary_row("vanishing_CnK", "Lemma 4.1 proof / g(theta)", worst_cnk, 1e-10, true));
    rows.back().detail = "closed-form C_{n,K} vs numeric maximization, relative";
    return rows;
}

std::vector<CheckReport> battery_duality(const SuiteOptions& opt) {
    std::vector<CheckReport> rows;
    const HorizonT0 t0 = compute_T0(1.0, 10.0);

    // closed-form case: pure flow, He_1, D == e^{2S}
    {
        const double S = 0.005;
        const std::array<int, 1> a1{1};
        FieldProvider p = make_pure_provider(SpectralField::hermite_mode(1, a1, 1.0, 0.0, 4), 0.0);
        std::vector<double> grid;
        for (int k = 0; k < 16; ++k) grid.push_back((0.1 + 1.8 * k / 15.0) * S);
        const DualityResult dr = duality_pairing(p, S, grid, 1e-8, 0.0);
        double worst = 0.0;
        for (double d : dr.D) worst = std::max(worst, std::abs(d - std::exp(2.0 * S)));
        rows.push_back(summary_row("duality_closed_form", "Theorem 1.4 proof / duality pairing", worst, 1e-8, true));
        rows.back().detail = "|D - e^{2S}| for the degree-1 eigen-solution";
    }

    // smooth potential V = r^2/4, ten random data, dt-refined
    {
        SplitMix64 rng(opt.seed ^ 0xd0a1ULL);
        Potential V;
        V.kind = Potential::Kind::smooth_radial;
        V.v = [](double r) { return 0.25 * r * r; };
        V.v_prime = [](double r) { return 0.5 * r; };
        V.L = 1.0;
        const double S = t0.value / 4.0;
        std::vector<double> grid;
        for (int k = 0; k < 16; ++k) grid.push_back((0.1 + 1.8 * k / 15.0) * S);

        double worst_rel = 0.0;
        for (int i = 0; i < 10; ++i) {
            SpectralField u0 = random_field(rng, 1, 8, 6);
            double prev = std::numeric_limits<double>::infinity();
            double rel = std::numeric_limits<double>::infinity();
            for (double dt : {t0.value / 512.0, t0.value / 1024.0, t0.value / 2048.0}) {
                EvolutionConfig cfg{dt, 8, 16};
                FieldProvider p = make_evolved_provider(u0, -2.0 * S, cfg, nullptr, &V);
                const DualityResult dr = duality_pairing(p, S, grid, 1e-6, 0.0);
                double dev = 0.0;
                for (double d : dr.D) dev = std::max(dev, std::abs(d - dr.D[0]));
                rel = dev / std::max(std::abs(dr.D[0]), 1e-300);
                if (std::abs(rel - prev) < 1e-8 || rel < 1e-8) break;
                prev = rel;
            }
            worst_rel = std::max(worst_rel, rel);
        }
        rows.push_back(summary_row("duality_smooth_potential", "Theorem 1.4 proof / duality pairing", worst_rel, 1e-6, true));
        rows.back().detail = "max relative drift of D over 10 random data, V = r^2/4";
    }
    return rows;
}

std::vector<CheckReport> battery_potential(const SuiteOptions& opt) {
    std::vector<CheckReport> rows;
    struct WChoice {
        const char* name;
        std::function<double(const Point&)> w;
        double L;
    };
    const WChoice ws[3] = {
        {"w_const", [](const Point&) { return 1.0; }, 1.0},
        {"w_sign_changing", [](const Point& th) { return th[0] * th[0] - th[1] * th[1]; }, 1.0},
        {"w_offset", [](const Point& th) { return 0.5 + (th[2] * th[2] - 1.0 / 3.0); }, 1.2},
    };

    double worst_slack = std::numeric_limits<double>::infinity();
    bool all = true;
    for (const auto& wc : ws) {
        Scenario sc;
        sc.name = std::string("potential_q2_") + wc.name;
        sc.dim = 3;
        sc.mode = Mode::potential_singular;
        sc.growth = GrowthClass{1.0, 64.0};
        sc.potential.kind = Potential::Kind::singular_radial;
        sc.potential.q = 2.0;
        sc.potential.epsilon = 1e-3;
        sc.potential.w = wc.w;
        sc.potential.L = wc.L;
        sc.grid.degree = 8;
        sc.grid.nodes = 20;
        const double T0 = compute_T0(1.0, 10.0).value;
        sc.grid.dt = T0 / 800.0;
        sc.grid.refine_tol = 1e-6;
        sc.grid.max_refine = 2;
        // odd two-order mixture: strong degree-3 part plus a small degree-1 part
        sc.hermite_terms = {
            {8e-3, {1, 0, 0}}, {3.2e-3, {0, 1, 0}}, {1.0, {1, 1, 1}}, {0.5, {3, 0, 0}}, {0.3, {1, 2, 0}}};
        sc.checks.push_back({.name = "potential_monotone", .tol = 1e-6});
        sc.checks.push_back({.name = "reconstruction"});

        const ScenarioResult res = run_scenario(sc, opt.threads);
        all = all && res.pass;
        for (const auto& r : res.rows)
            if (r.check == "potential_monotone") worst_slack = std::min(worst_slack, r.lhs);
    }
    CheckReport r = summary_row("potential_monotone_q2", "Eq. 4.3 / q = 2", worst_slack, -1e-6, false);
    r.pass = r.pass && all;
    r.detail = "min N' over converged traces, three bounded w (one sign-changing), n = 3";
    rows.push_back(r);
    return rows;
}

std::vector<CheckReport> battery_hbound(const SuiteOptions&) {
    std::vector<CheckReport> rows;
    const double tau0 = 0.01;
    std::vector<double> grid;
    for (int k = 0; k < 60; ++k) grid.push_back(std::exp(std::log(1e-6) + (std::log(tau0) - std::log(1e-6)) * k / 59.0));

    int mismatches = 0;
    for (int K = 1; K <= 3; ++K) {
        for (int C2 = 1; C2 <= 8; ++C2) {
            FrequencyTrace tr;
            tr.dim = 1;
            tr.tau = grid;
            for (double tau : grid) {
                tr.H.push_back(std::pow(tau, 2 * K));
                tr.I.push_back(0.0);
                tr.N.push_back(0.0);
                tr.N_prime.push_back(0.0);
                tr.flags.push_back("");
            }
            const HBoundReport hb = check_H_lower_bound(tr, tau0, static_cast<double>(C2), 1e-8);
            const bool should_fail = 2 * K > C2;
            if (hb.tau_form.pass == should_fail) ++mismatches;
        }
    }
    CheckReport r = summary_row("h_lower_bound_mechanism", "Theorem 1.3 proof / H lower bound",
                                static_cast<double>(mismatches), 0.0, true);
    r.detail = "synthetic H = tau^{2K} fails the tau^{C2} bound exactly when 2K > C2 (24 combinations)";
    rows.push_back(r);
    return rows;
}

namespace {

struct Battery {
    const char* name;
    std::vector<CheckReport> (*fn)(const SuiteOptions&);
};

const Battery kBatteries[] = {
    {"identities", battery_identities}, {"monotonicity", battery_monotonicity}, {"hardy", battery_hardy},
    {"vanishing", battery_vanishing},   {"duality", battery_duality},           {"potential", battery_potential},
    {"hbound", battery_hbound},
};

}  // namespace

int run_suite(const std::string& which, const SuiteOptions& opt, std::ostream& out) {
    std::vector<const Battery*> todo;
    if (which == "all") {
        for (const auto& b : kBatteries) todo.push_back(&b);
    } else {
        bool found = false;
        for (const auto& b : kBatteries)
            if (which == b.name) {
                todo.push_back(&b);
                found = true;
            }
        if (!found)
            throw ConfigError("unknown suite '" + which +
                              "' (expected identities, monotonicity, hardy, vanishing, or all)");
    }

    bool all_pass = true;
    for (const Battery* b : todo) {
        const std::vector<CheckReport> rows = b->fn(opt);
        for (const auto& r : rows) {
            out << (r.pass ? "[PASS] " : "[FAIL] ") << b->name << "/" << r.check << "  lhs=" << format_double(r.lhs)
                << " rhs=" << format_double(r.rhs) << "  (" << r.anchor << ")\n";
            all_pass = all_pass && r.pass;
        }
        ReportMeta meta;
        meta.scenario = std::string("suite_") + b->name;
        meta.mode = "suite";
        meta.seed = opt.seed;
        meta.has_seed = true;
        write_report_json(opt.outdir / (std::string("suite_") + b->name + ".report.json"), meta, rows);
    }
    return all_pass ? 0 : 2;
}

}  // namespace oulab
