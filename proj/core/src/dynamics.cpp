#include "oulab/dynamics.hpp"

#include <cmath>

namespace oulab {

void validate_lower_order(const LowerOrder& lo, const GaussianGrid& grid, std::span<const double> times) {
    if (lo.L < 0.0 || !std::isfinite(lo.L)) throw ConfigError("lower-order bound L must be finite and nonnegative");
    const std::size_t n = grid.size();
    for (double t : times) {
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = grid.node(i);
            double b2 = 0.0;
            for (int a = 0; a < grid.dim(); ++a)
                if (lo.b[static_cast<std::size_t>(a)]) {
                    const double ba = lo.b[static_cast<std::size_t>(a)](p, t);
                    b2 += ba * ba;
                }
            if (std::sqrt(b2) > lo.L * (1.0 + 1e-12))
                throw ConfigError("drift bound |b| <= L violated at node " + format_point(p) + ", t=" + format_double(t));
            if (lo.c) {
                const double c = lo.c(p, t);
                if (std::abs(c) / (1.0 + p.norm()) > lo.L * (1.0 + 1e-12))
                    throw ConfigError("linear-growth bound |c|/(1+|x|) <= L violated at node " + format_point(p) +
                                      ", t=" + format_double(t));
            }
        }
    }
}

double Potential::value(const Point& x) const {
    const double r = x.norm();
    double radial;
    if (kind == Kind::singular_radial) {
        radial = std::pow(r, -q);
    } else {
        radial = v ? v(r) : 0.0;
    }
    double ang = 1.0;
    if (w) {
        Point theta(x.dim);
        if (r > 0.0)
            for (int a = 0; a < x.dim; ++a) theta[a] = x[a] / r;
        ang = w(theta);
    }
    return radial * ang;
}

double Potential::value_regularized(const Point& x) const {
    const double r2 = x.norm_sq() + epsilon * epsilon;
    const double r = std::sqrt(r2);
    double radial;
    if (kind == Kind::singular_radial) {
        radial = std::pow(r2, -0.5 * q);
    } else {
        radial = v ? v(r) : 0.0;
    }
    double ang = 1.0;
    if (w) {
        const double rn = x.norm();
        Point theta(x.dim);
        if (rn > 0.0)
            for (int a = 0; a < x.dim; ++a) theta[a] = x[a] / rn;
        ang = w(theta);
    }
    return radial * ang;
}

void validate_potential(const Potential& V, int dim, const GaussianGrid& grid) {
    if (!(V.L > 0.0) || !std::isfinite(V.L)) throw ConfigError("angular sup bound L must be finite and positive");
    const std::size_t n = grid.size();
    if (V.w) {
        for (std::size_t i = 0; i < n; ++i) {
            Point p = grid.node(i);
            const double r = p.norm();
            if (r == 0.0) continue;
            for (int a = 0; a < dim; ++a) p[a] /= r;
            const double wv = V.w(p);
            if (std::abs(wv) > V.L * (1.0 + 1e-12))
                throw ConfigError("angular profile exceeds sup bound L at direction " + format_point(p));
            if (V.kind == Potential::Kind::singular_radial && V.q < 2.0 && wv < -1e-12)
                throw ConfigError("angular profile must be nonnegative for q < 2 (violated at direction " +
                                  format_point(p) + ")");
        }
    }
    if (V.kind == Potential::Kind::singular_radial) {
        if (dim < 3) throw ConfigError("singular radial potentials require dimension n >= 3");
        if (!(V.q > 0.0) || V.q > 2.0) throw ConfigError("singular exponent q must lie in (0, 2]");
        if (V.epsilon < 0.0) throw ConfigError("regularization length must be nonnegative");
    } else {
        if (!V.v) throw ConfigError("smooth radial potential requires a radial profile v(r)");
        if (V.v_prime) {
            for (std::size_t i = 0; i < n; ++i) {
                const double r = grid.node(i).norm();
                if (r == 0.0) continue;
                const double lhs = std::abs(r * V.v_prime(r) + 2.0 * V.v(r));
                if (lhs > (1.0 + r * r) * (1.0 + 1e-12))
                    throw ConfigError("radial hypothesis |r v' + 2v| <= 1 + r^2 violated at r=" + format_double(r));
            }
        }
    }
}

SpectralField evolve_pure(const SpectralField& u0, double t) {
    SpectralField u = u0;
    auto c = u.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-static_cast<double>(u.total_degree(i)) * t);
    u.set_time(u0.time() + t);
    return u;
}

namespace {

/// Nodal right-hand side G(u) evaluated on the gamma grid.
using NodalRhs = std::function<void(std::span<const double> u_nodal, const std::vector<std::vector<double>>& grad_nodal,
                                    double t, std::span<double> out)>;

SpectralField evolve_split(const SpectralField& u0, const EvolutionConfig& cfg, double t, const NodalRhs& rhs,
                           bool needs_gradient, EvolveStats* stats) {
    if (!(cfg.dt > 0.0)) throw ConfigError("time step dt must be positive");
    if (cfg.degree != u0.max_degree())
        throw ConfigError("evolution config degree D=" + std::to_string(cfg.degree) +
                          " does not match field degree " + std::to_string(u0.max_degree()));
    if (cfg.nodes < cfg.degree + 1)
        throw ConfigError("evolution config needs m >= D+1 (got m=" + std::to_string(cfg.nodes) +
                          ", D=" + std::to_string(cfg.degree) + ")");
    if (t == 0.0) return u0;
    if (t < 0.0) throw ConfigError("split evolution advances forward in time only");

    const GaussianGrid grid = GaussianGrid::build_gamma(u0.dim(), cfg.nodes);
    const int steps = std::max(1, static_cast<int>(std::llround(t / cfg.dt)));
    const double dt = t / steps;

    const double initial_norm = u0.norm();
    const double blowup = 1e12 * std::max(initial_norm, 1e-300);

    SpectralField u = u0;
    std::vector<double> g_nodal(grid.size());
    double max_trunc = 0.0;

    for (int step = 0; step < steps; ++step) {
        const double t_mid = u.time() + 0.5 * dt;
        u = evolve_pure(u, 0.5 * dt);

        // explicit midpoint for du/dt = G(u), coefficients frozen at t_mid
        auto apply_rhs = [&](const SpectralField& f, SpectralField& out_proj) {
            std::vector<double> u_nodal = synthesize(f, grid);
            std::vector<std::vector<double>> grads;
            if (needs_gradient) {
                grads.reserve(static_cast<std::size_t>(f.dim()));
                for (int a = 0; a < f.dim(); ++a) grads.push_back(synthesize(f.derivative(a), grid));
            }
            rhs(u_nodal, grads, t_mid, g_nodal);
            const double nodal_e = nodal_energy(g_nodal, grid);
            out_proj = project_nodal(g_nodal, cfg.degree, grid, f.time());
            const double coeff_e = out_proj.norm();
            const double discarded = std::max(0.0, nodal_e - coeff_e * coeff_e);
            const double un = u.norm();
            if (un > 0.0) max_trunc = std::max(max_trunc, dt * dt * discarded / (un * un));
        };

        SpectralField g1(u.dim(), u.max_degree());
        apply_rhs(u, g1);
        SpectralField u_half = u;
        u_half.axpy(0.5 * dt, g1);
        SpectralField g2(u.dim(), u.max_degree());
        apply_rhs(u_half, g2);
        u.axpy(dt, g2);

        u = evolve_pure(u, 0.5 * dt);

        if (u.norm() > blowup)
            throw InstabilityError("coefficient norm exceeded 1e12 x initial after " + std::to_string(step + 1) +
                                   " steps; reduce dt or the degree cutoff");
    }
    u.set_time(u0.time() + t);
    if (stats) {
        stats->truncation_energy = max_trunc;
        stats->steps = steps;
    }
    return u;
}

}  // namespace

SpectralField evolve_lower_order(const SpectralField& u0, const LowerOrder& lo, const EvolutionConfig& cfg, double t,
                                 EvolveStats* stats) {
    const GaussianGrid grid = GaussianGrid::build_gamma(u0.dim(), cfg.nodes);
    const int dim = u0.dim();
    NodalRhs rhs = [&lo, &grid, dim](std::span<const double> u_nodal, const std::vector<std::vector<double>>& grads,
                                     double t_mid, std::span<double> out) {
        const std::size_t n = u_nodal.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point p = grid.node(i);
            double g = 0.0;
            for (int a = 0; a < dim; ++a)
                if (lo.b[static_cast<std::size_t>(a)]) g += lo.b[static_cast<std::size_t>(a)](p, t_mid) * grads[static_cast<std::size_t>(a)][i];
            if (lo.c) g += lo.c(p, t_mid) * u_nodal[i];
            out[i] = g;
        }
    };
    const bool needs_grad = lo.b[0] || lo.b[1] || lo.b[2];
    return evolve_split(u0, cfg, t, rhs, needs_grad, stats);
}

SpectralField evolve_potential(const SpectralField& u0, const Potential& V, const EvolutionConfig& cfg, double t,
                               EvolveStats* stats) {
    const GaussianGrid grid = GaussianGrid::build_gamma(u0.dim(), cfg.nodes);
    // V is time independent; cache the regularized nodal values once
    std::vector<double> v_nodal(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v_nodal[i] = V.value_regularized(grid.node(i));
        if (!std::isfinite(v_nodal[i]))
            throw EvalError("non-finite potential value at node " + format_point(grid.node(i)));
    }
    NodalRhs rhs = [&v_nodal](std::span<const double> u_nodal, const std::vector<std::vector<double>>&, double,
                              std::span<double> out) {
        for (std::size_t i = 0; i < u_nodal.size(); ++i) out[i] = -v_nodal[i] * u_nodal[i];
    };
    return evolve_split(u0, cfg, t, rhs, false, stats);
}

double pde_residual(const SpectralField& u_before, const SpectralField& u_after, const LowerOrder* lo,
                    const Potential* V, double dt, const GaussianGrid& grid) {
    if (u_before.dim() != u_after.dim() || u_before.max_degree() != u_after.max_degree())
        throw ConfigError("field shape mismatch in pde_residual");
    if (std::abs((u_after.time() - u_before.time()) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
        throw ConfigError("time stamps of the two fields must differ by dt");

    SpectralField u_mid = u_before;
    u_mid += u_after;
    u_mid *= 0.5;
    const double t_mid = 0.5 * (u_before.time() + u_after.time());

    // L_gamma u_mid in coefficient space (diagonal), then all terms nodally.
    SpectralField lg = u_mid;
    {
        auto c = lg.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= -static_cast<double>(lg.total_degree(i));
    }
    const std::vector<double> before_n = synthesize(u_before, grid);
    const std::vector<double> after_n = synthesize(u_after, grid);
    const std::vector<double> mid_n = synthesize(u_mid, grid);
    const std::vector<double> lg_n = synthesize(lg, grid);
    std::vector<std::vector<double>> grads;
    if (lo) {
        for (int a = 0; a < u_mid.dim(); ++a) grads.push_back(synthesize(u_mid.derivative(a), grid));
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point p = grid.node(i);
        double rhs = lg_n[i];
        if (lo) {
            for (int a = 0; a < u_mid.dim(); ++a)
                if (lo->b[static_cast<std::size_t>(a)]) rhs += lo->b[static_cast<std::size_t>(a)](p, t_mid) * grads[static_cast<std::size_t>(a)][i];
            if (lo->c) rhs += lo->c(p, t_mid) * mid_n[i];
        }
        if (V) rhs -= V->value_regularized(p) * mid_n[i];
        worst = std::max(worst, std::abs((after_n[i] - before_n[i]) / dt - rhs));
    }
    return worst;
}

}  // namespace oulab
