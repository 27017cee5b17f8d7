#include "oulab/mehler.hpp"

#include <cmath>

namespace oulab {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

KernelParams KernelParams::centered(int dim, double tau) {
    KernelParams p;
    p.dim = dim;
    p.center = Point(dim);
    p.center_time = 0.0;
    p.eval_time = -tau;
    p.validate();
    return p;
}

bool KernelParams::is_centered() const {
    for (int a = 0; a < dim; ++a)
        if (center[a] != 0.0) return false;
    return true;
}

void KernelParams::validate() const {
    if (dim < 1 || dim > kMaxDim) throw ConfigError("kernel dimension out of range {1,2,3}");
    const double t = tau();
    if (!(t > 0.0)) throw DomainError("backward kernel requires tau = t0 - t > 0 (got tau=" + format_double(t) + ")");
    if (t > tau_max) throw ConfigError("tau=" + format_double(t) + " exceeds tau_max=" + format_double(tau_max));
}

double SymMatrix::trace() const {
    double r = 0;
    for (int i = 0; i < dim; ++i) r += at(i, i);
    return r;
}

double SymMatrix::max_abs() const {
    double r = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r = std::max(r, std::abs(at(i, j)));
    return r;
}

double SymMatrix::max_asymmetry() const {
    double r = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) r = std::max(r, std::abs(at(i, j) - at(j, i)));
    return r;
}

double mehler_forward(const Point& x, const Point& y, double t) {
    if (!(t > 0.0)) throw DomainError("forward Mehler kernel requires t > 0");
    const int n = x.dim;
    const double e1 = std::exp(-t);
    const double e2 = std::exp(-2.0 * t);
    const double s = -std::expm1(-2.0 * t);
    const double quad = e2 * (x.norm_sq() + y.norm_sq()) - 2.0 * e1 * x.dot(y);
    const double log_val = -0.5 * n * std::log(s) - 0.5 * quad / s;
    return std::exp(log_val);
}

double log_mehler_backward(const KernelParams& params, const Point& x) {
    params.validate();
    const double tau = params.tau();
    const double s = variance_s(tau);
    const double rho = std::exp(-2.0 * tau) / s;
    Point d(params.dim);
    for (int a = 0; a < params.dim; ++a) d[a] = x[a] - params.center[a];
    return -0.5 * params.dim * std::log(s) - 0.5 * rho * d.norm_sq();
}

KernelEval mehler_backward(const KernelParams& params, const Point& x) {
    params.validate();
    const double tau = params.tau();
    const double s = variance_s(tau);
    const double rho = std::exp(-2.0 * tau) / s;

    Point d(params.dim);
    for (int a = 0; a < params.dim; ++a) d[a] = x[a] - params.center[a];

    KernelEval ev;
    ev.value = std::exp(-0.5 * params.dim * std::log(s) - 0.5 * rho * d.norm_sq());
    ev.grad = Point(params.dim);
    ev.hess.dim = params.dim;
    for (int i = 0; i < params.dim; ++i) {
        ev.grad[i] = -rho * d[i] * ev.value;
        for (int j = 0; j < params.dim; ++j)
            ev.hess.at(i, j) = (rho * rho * d[i] * d[j] - (i == j ? rho : 0.0)) * ev.value;
    }
    return ev;
}

namespace {
/// L_gamma M = tr(hess) - x . grad, from the analytic derivatives.
double ou_operator(const KernelParams& params, const Point& x) {
    const KernelEval ev = mehler_backward(params, x);
    double xg = 0;
    for (int a = 0; a < params.dim; ++a) xg += x[a] * ev.grad[a];
    return ev.hess.trace() - xg;
}
}  // namespace

double backward_heat_residual(const KernelParams& params, const Point& x, double h) {
    params.validate();
    if (!params.is_centered())
        throw ConfigError("the backward heat identity is stated for the centered kernel; translate coordinates first");
    const double tau = params.tau();
    if (h == 0.0) h = std::min(1e-4, tau / 10.0);
    if (!(h > 0.0) || h > tau / 2.0)
        throw ConfigError("finite-difference step h=" + format_double(h) + " too large (need 0 < h <= tau/2)");

    KernelParams later = params, earlier = params;
    later.eval_time = params.eval_time + h;    // tau - h
    earlier.eval_time = params.eval_time - h;  // tau + h
    const double m_later = std::exp(log_mehler_backward(later, x));
    const double m_earlier = std::exp(log_mehler_backward(earlier, x));
    const double dt = (m_later - m_earlier) / (2.0 * h);
    return std::abs(dt + ou_operator(params, x));
}

SymMatrix matrix_identity_residual(const KernelParams& params, const Point& x) {
    const KernelEval ev = mehler_backward(params, x);
    const double tau = params.tau();
    // e^{2t}/(1-e^{2t}) at t = -tau
    const double factor = std::exp(-2.0 * tau) / variance_s(tau);
    SymMatrix r;
    r.dim = params.dim;
    for (int i = 0; i < params.dim; ++i)
        for (int j = 0; j < params.dim; ++j)
            r.at(i, j) = ev.hess.at(i, j) - ev.grad[i] * ev.grad[j] / ev.value + (i == j ? factor * ev.value : 0.0);
    return r;
}

GaussianGrid composite_grid(int dim, int m, double tau, double tau_max) {
    if (!(tau > 0.0)) throw DomainError("composite grid requires tau > 0");
    if (tau > tau_max) throw ConfigError("tau=" + format_double(tau) + " exceeds tau_max=" + format_double(tau_max));
    return GaussianGrid::build_scaled(dim, m, std::sqrt(variance_s(tau)));
}

void require_composite_grid(const GaussianGrid& grid, double tau) {
    const double sigma = std::sqrt(variance_s(tau));
    if (std::abs(grid.scale() - sigma) > 1e-12 * sigma)
        throw ConfigError("grid scale " + format_double(grid.scale()) + " does not match composite measure scale " +
                          format_double(sigma) + " for tau=" + format_double(tau));
}

double kernel_mass(const KernelParams& params, const GaussianGrid& composite) {
    params.validate();
    if (!params.is_centered())
        throw ConfigError("kernel_mass is stated for the centered kernel; translate coordinates first");
    const double tau = params.tau();
    require_composite_grid(composite, tau);
    const int n = params.dim;
    const double s = variance_s(tau);
    // sum_j w_j M(x_j) gamma(x_j) / nu_s(x_j), all three factors in log space.
    return pairwise_sum(composite.size(), [&](std::size_t j) {
        const Point p = composite.node(j);
        const double r2 = p.norm_sq();
        const double log_gamma = -0.5 * n * kLog2Pi - 0.5 * r2;
        const double log_nu = -0.5 * n * (kLog2Pi + std::log(s)) - 0.5 * r2 / s;
        return composite.weight(j) * std::exp(log_mehler_backward(params, p) + log_gamma - log_nu);
    });
}

double kernel_mass_forward(const Point& x, double t, const GaussianGrid& unit_grid) {
    if (unit_grid.scale() != 1.0) throw ConfigError("forward kernel mass integrates against dgamma on the unit grid");
    return integrate_gamma([&](const Point& y) { return mehler_forward(x, y, t); }, unit_grid);
}

double integrate_mweighted(const PointFn& g, double tau, const GaussianGrid& composite) {
    require_composite_grid(composite, tau);
    return integrate_gamma(g, composite);
}

}  // namespace oulab
