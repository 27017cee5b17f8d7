#include "oulab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oulab {

namespace {

constexpr double kRelTol = 1e-10;
constexpr double kSlack = 1e-9;

CheckReport inequality_report(const char* name, const char* anchor, double lhs, double rhs, double tau) {
    CheckReport rep;
    rep.check = name;
    rep.anchor = anchor;
    rep.inputs.emplace_back("tau", tau);
    rep.lhs = lhs;
    rep.rhs = rhs;
    const double allowance = rhs * kRelTol + kSlack * (std::abs(lhs) + std::abs(rhs));
    rep.pass = lhs <= rhs + allowance;
    rep.margin = (rhs - lhs) / std::max({std::abs(rhs), std::abs(lhs), 1e-300});
    return rep;
}

struct NodalData {
    std::vector<double> u;
    std::vector<std::vector<double>> grad;
    double H = 0.0;
    double Igrad = 0.0;
};

NodalData nodal_data(const SpectralField& u, double tau, const GaussianGrid& comp) {
    require_composite_grid(comp, tau);
    NodalData d;
    d.u = synthesize(u, comp);
    d.H = nodal_energy(d.u, comp);
    for (int a = 0; a < u.dim(); ++a) {
        d.grad.push_back(synthesize(u.derivative(a), comp));
        d.Igrad += nodal_energy(d.grad.back(), comp);
    }
    return d;
}

}  // namespace

CheckReport hardy_quadratic(const SpectralField& u, double tau, const GaussianGrid& comp) {
    const NodalData d = nodal_data(u, tau, comp);
    const double lhs = pairwise_sum(comp.size(), [&](std::size_t i) {
        return comp.weight(i) * comp.node(i).norm_sq() * d.u[i] * d.u[i];
    });
    const double factor = variance_s(tau) * std::exp(2.0 * tau);  // (1-e^{-2tau})/e^{-2tau}
    const double rhs = factor * (u.dim() * d.H + d.Igrad);
    return inequality_report("hardy_quadratic", "Lemma 3.1 / Eq. 3.1", lhs, rhs, tau);
}

CheckReport hardy_singular(const SpectralField& u, double tau, const GaussianGrid& comp) {
    const int n = u.dim();
    if (n < 3) throw DomainError("the singular Hardy bound requires dimension n >= 3");
    const NodalData d = nodal_data(u, tau, comp);
    const double lhs = pairwise_sum(comp.size(), [&](std::size_t i) {
        const double r2 = comp.node(i).norm_sq();
        if (r2 == 0.0) throw EvalError("quadrature node at the origin (use even m for singular integrands)");
        return comp.weight(i) * d.u[i] * d.u[i] / r2;
    });
    const double s = variance_s(tau);
    const double rhs = 2.0 / ((n - 2) * s) * d.H + 4.0 / ((n - 2) * (n - 2)) * d.Igrad;
    return inequality_report("hardy_singular", "Lemma 3.1 / Eq. 3.2", lhs, rhs, tau);
}

double hardy_proof_identity_gap(const SpectralField& u, double tau, const GaussianGrid& comp) {
    const NodalData d = nodal_data(u, tau, comp);
    const double lhs = pairwise_sum(comp.size(), [&](std::size_t i) {
        return comp.weight(i) * comp.node(i).norm_sq() * d.u[i] * d.u[i];
    });
    const double rhs_integral = pairwise_sum(comp.size(), [&](std::size_t i) {
        const Point p = comp.node(i);
        double xg = 0.0;
        for (int a = 0; a < u.dim(); ++a) xg += p[a] * d.grad[static_cast<std::size_t>(a)][i];
        return comp.weight(i) * d.u[i] * (2.0 * xg + u.dim() * d.u[i] - p.norm_sq() * d.u[i]);
    });
    const double rhs = variance_s(tau) * std::exp(2.0 * tau) * rhs_integral;
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

void validate_probe(const VanishingProbe& probe, int dim, const GaussianGrid& grid) {
    if (probe.K < 0) throw ConfigError("vanishing order K must be nonnegative");
    if (!(probe.C0 > 0.0)) throw ConfigError("local bound constant C0 must be positive");
    if (!(probe.T1 > 0.0)) throw ConfigError("local neighbourhood size T1 must be positive");
    if (!probe.v) throw ConfigError("probe function v is required");
    validate_growth_class(probe.growth);

    // ball-cylinder mesh for the local bound |v| <= C0 (|x|^{2K} + |t|^K)
    const int nr = 9, nt = 7;
    for (int it = 0; it < nt; ++it) {
        const double t = -probe.T1 * it / (nt - 1);
        const double rmax = std::sqrt(std::max(0.0, probe.T1 - std::abs(t)));
        for (int ir = 0; ir <= nr; ++ir) {
            const double r = rmax * ir / nr;
            for (int axis = 0; axis < dim; ++axis) {
                Point p(dim);
                p[axis] = r;
                const double bound =
                    probe.C0 * (std::pow(p.norm_sq(), probe.K) + std::pow(std::abs(t), probe.K));
                if (std::abs(probe.v(p, t)) > bound * (1.0 + 1e-12))
                    throw ConfigError("probe violates the local vanishing bound at " + format_point(p) +
                                      ", t=" + format_double(t));
            }
            // diagonal direction
            Point p(dim);
            for (int a = 0; a < dim; ++a) p[a] = r / std::sqrt(static_cast<double>(dim));
            const double bound = probe.C0 * (std::pow(p.norm_sq(), probe.K) + std::pow(std::abs(t), probe.K));
            if (std::abs(probe.v(p, t)) > bound * (1.0 + 1e-12))
                throw ConfigError("probe violates the local vanishing bound at " + format_point(p) +
                                  ", t=" + format_double(t));
        }
    }
    for (double t : {0.0, -probe.T1 / 2, -probe.T1}) {
        if (!check_growth([&](const Point& p) { return probe.v(p, t); }, probe.growth, grid))
            throw ConfigError("probe violates its declared growth class at t=" + format_double(t));
    }
}

double vanishing_log_CnK(int n, int K) {
    const double p = static_cast<double>(n + 4 * K);
    const double theta = 1.0 / (16.0 * p);
    return -p * std::log(theta) - 1.0 / (16.0 * theta);
}

EnvelopeReport vanishing_envelope(const VanishingProbe& probe, std::span<const double> tau_grid, int dim, int m) {
    const double T0 = compute_T0(probe.growth.A, probe.T1).value;
    EnvelopeReport out;
    for (double tau : tau_grid) {
        if (!(tau > 0.0) || !(tau < T0))
            throw ConfigError("envelope tau grid must lie inside (0, T0) with T0=" + format_double(T0));
    }

    for (double tau : tau_grid) {
        const GaussianGrid comp = composite_grid(dim, m, tau);
        const double split = std::pow(tau, 0.25);
        double inner = 0.0;
        const double total = pairwise_sum(comp.size(), [&](std::size_t i) {
            const Point p = comp.node(i);
            const double val = probe.v(p, -tau);
            if (!std::isfinite(val)) throw EvalError("non-finite probe value at node " + format_point(p));
            const double term = comp.weight(i) * val * val;
            if (p.norm() <= split) inner += term;
            return term;
        });
        out.tau.push_back(tau);
        out.G.push_back(total);
        out.G_inner.push_back(inner);
        out.G_outer.push_back(total - inner);
    }

    // slope of log G vs log tau over the lowest decade of the grid
    const double decade_hi = tau_grid[0] * 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t k = 0; k < out.tau.size(); ++k) {
        if (out.tau[k] > decade_hi) break;
        if (!(out.G[k] > 0.0)) continue;
        const double x = std::log(out.tau[k]), y = std::log(out.G[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    const bool all_zero = std::all_of(out.G.begin(), out.G.end(), [](double g) { return g == 0.0; });
    out.slope = (cnt >= 2) ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;

    const double B0 = probe.growth.B;
    out.C1 = 2.0 * probe.C0 * probe.C0 + std::exp(vanishing_log_CnK(dim, probe.K)) * B0 * B0;

    out.slope_ok = all_zero || out.slope >= 2.0 * probe.K - 0.1;
    out.bound_ok = true;
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k < out.tau.size(); ++k) {
        const double bound = out.C1 * std::pow(out.tau[k], 2 * probe.K);
        const double ratio = out.G[k] / std::max(bound, 1e-300);
        worst_ratio = std::max(worst_ratio, ratio);
        if (out.G[k] > bound * (1.0 + kRelTol) + kSlack * (out.G[k] + bound)) out.bound_ok = false;
    }

    CheckReport rep;
    rep.check = "vanishing_envelope";
    rep.anchor = "Lemma 4.1";
    rep.inputs.emplace_back("K", probe.K);
    rep.inputs.emplace_back("C0", probe.C0);
    rep.inputs.emplace_back("C1", out.C1);
    rep.inputs.emplace_back("slope", out.slope);
    // diagnostic split at radius tau^{1/4}: outer share at the grid ends
    if (!out.G.empty() && out.G.front() > 0.0)
        rep.inputs.emplace_back("outer_fraction_min_tau", out.G_outer.front() / out.G.front());
    if (!out.G.empty() && out.G.back() > 0.0)
        rep.inputs.emplace_back("outer_fraction_max_tau", out.G_outer.back() / out.G.back());
    rep.lhs = out.slope;
    rep.rhs = 2.0 * probe.K - 0.1;
    rep.margin = out.slope - rep.rhs;
    rep.pass = out.slope_ok && out.bound_ok;
    rep.detail = "max G / (C1 tau^{2K}) = " + format_double(worst_ratio);
    out.report = rep;
    return out;
}

Case1Report case1_potential_bound(const RadialFn& v, const RadialFn& v_prime, std::span<const double> r_grid) {
    if (!v || !v_prime) throw ConfigError("radial profile and its derivative are required");
    const std::size_t n = r_grid.size();
    if (n < 3) throw ConfigError("radial grid needs at least 3 points");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(r_grid[k] > 0.0)) throw ConfigError("radial grid must be positive");
        if (k && !(r_grid[k] > r_grid[k - 1])) throw ConfigError("radial grid must be strictly increasing");
    }

    Case1Report out;
    out.r.assign(r_grid.begin(), r_grid.end());
    out.hypothesis_ok.resize(n);
    std::size_t first_violation = n;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = r_grid[k];
        const double lhs = std::abs(r * v_prime(r) + 2.0 * v(r));
        out.hypothesis_ok[k] = lhs <= (1.0 + r * r) * (1.0 + 1e-12);
        if (!out.hypothesis_ok[k] && first_violation == n) first_violation = k;
    }

    // d/dr (r^2 v) = r (r v' + 2 v), centered differences on interior points
    out.derivative_ok = true;
    double worst_dr = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double rm = r_grid[k - 1], r0 = r_grid[k], rp = r_grid[k + 1];
        const double num = (rp * rp * v(rp) - rm * rm * v(rm)) / (rp - rm);
        const double expect = r0 * (r0 * v_prime(r0) + 2.0 * v(r0));
        const double h = 0.5 * (rp - rm);
        const double scale = std::max({std::abs(expect), 1.0});
        const double err = std::abs(num - expect) / scale;
        worst_dr = std::max(worst_dr, err);
        if (err > 10.0 * h * h + 1e-8) out.derivative_ok = false;
    }

    // |r^2 v(r) - r0^2 v(r0)| <= int rho (1 + rho^2) drho, exact primitive
    const double r0 = r_grid[0];
    const double base = r0 * r0 * v(r0);
    auto primitive = [](double r) { return r * r / 2.0 + r * r * r * r / 4.0; };
    out.bound_ok = true;
    double c0 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = r_grid[k];
        const double lhs = std::abs(r * r * v(r) - base);
        const double rhs = primitive(r) - primitive(r0);
        if (out.hypothesis_ok[k] && lhs > rhs * (1.0 + kRelTol) + kSlack * (lhs + rhs + 1.0)) out.bound_ok = false;
        c0 = std::max(c0, r * r * std::max(0.0, std::abs(v(r)) - r * r / 4.0 - 0.5));
    }
    out.c0_implied = c0;

    CheckReport rep;
    rep.check = "case1_potential_bound";
    rep.anchor = "Theorem 1.4 proof / variation of parameters";
    rep.inputs.emplace_back("c0_implied", c0);
    rep.inputs.emplace_back("worst_derivative_gap", worst_dr);
    rep.pass = out.derivative_ok && out.bound_ok && first_violation == n;
    rep.lhs = static_cast<double>(first_violation);
    rep.rhs = static_cast<double>(n);
    rep.margin = rep.rhs - rep.lhs;
    if (first_violation < n)
        rep.detail = "radial hypothesis fails first at r=" + format_double(r_grid[first_violation]);
    out.report = rep;
    return out;
}

}  // namespace oulab
