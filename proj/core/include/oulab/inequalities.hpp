#pragma once

#include "oulab/frequency.hpp"

namespace oulab {

/// LHS of  int |x|^2 u^2 M dgamma <= (1-e^{-2tau}) e^{2tau} (n H + I_grad),
/// with the quadrature slack of 1e-9 x scale added to the comparison.
CheckReport hardy_quadratic(const SpectralField& u, double tau, const GaussianGrid& composite);

/// int u^2/|x|^2 M dgamma <= 2/((n-2)(1-e^{-2tau})) H + 4/(n-2)^2 I_grad, n >= 3.
/// DomainError for n < 3; EvalError if a quadrature node sits at the origin
/// (cannot happen for even m).
CheckReport hardy_singular(const SpectralField& u, double tau, const GaussianGrid& composite);

/// Relative gap of the integration-by-parts identity behind the quadratic bound:
/// int |x|^2 u^2 M dgamma = (1-e^{-2tau}) e^{2tau} int u (2 x.grad u + n u - |x|^2 u) M dgamma.
double hardy_proof_identity_gap(const SpectralField& u, double tau, const GaussianGrid& composite);

/// Function with vanishing order K at the space-time origin: |v| <= C0 (|x|^{2K} + |t|^K)
/// on |x|^2 + |t| <= T1, together with its growth class.
struct VanishingProbe {
    int K = 1;
    double C0 = 1.0;
    double T1 = 0.1;
    SpaceTimeFn v;
    GrowthClass growth;
};

/// Sampled validation of the probe's local bound (ball-cylinder mesh) and of
/// its growth class (grid nodes, several times). Throws ConfigError.
void validate_probe(const VanishingProbe& probe, int dim, const GaussianGrid& grid);

/// log C_{n,K} = g(1/(16(n+4K))) for g(theta) = -(n+4K) log(theta) - 1/(16 theta).
double vanishing_log_CnK(int n, int K);

struct EnvelopeReport {
    std::vector<double> tau;
    std::vector<double> G;        // int v^2(., -tau) M dgamma
    std::vector<double> G_inner;  // |x| <= tau^{1/4} part (diagnostic split)
    std::vector<double> G_outer;
    double slope = 0.0;           // log-log fit over the lowest decade
    double C1 = 0.0;              // 2 C0^2 + C_{n,K} B0^2
    bool slope_ok = false;
    bool bound_ok = false;
    CheckReport report;
};

/// G(tau) over the grid, fitted vanishing order and the C1 tau^{2K} envelope.
/// The grid must lie inside (0, T0(A, T1)).
EnvelopeReport vanishing_envelope(const VanishingProbe& probe, std::span<const double> tau_grid, int dim, int m);

struct Case1Report {
    std::vector<double> r;
    std::vector<bool> hypothesis_ok;   // |r v' + 2v| <= 1 + r^2 per grid point
    bool derivative_ok = false;        // d/dr (r^2 v) == r (r v' + 2v) numerically
    bool bound_ok = false;             // |r^2 v(r) - r0^2 v(r0)| <= int_{r0}^{r} rho (1+rho^2) drho
    double c0_implied = 0.0;           // sup r^2 max(0, |v| - r^2/4 - 1/2)
    CheckReport report;
};

/// Radial ODE mechanism behind the smooth-potential bound |v| <= r^2/4 + 1/2 + c0/r^2.
Case1Report case1_potential_bound(const RadialFn& v, const RadialFn& v_prime, std::span<const double> r_grid);

}  // namespace oulab
