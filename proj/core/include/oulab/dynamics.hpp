#pragma once

#include <functional>
#include <optional>

#include "oulab/spectral.hpp"

namespace oulab {

using SpaceTimeFn = std::function<double(const Point&, double)>;
using RadialFn = std::function<double(double)>;

/// Lower-order coefficients of  du/dt = L_gamma u + b . grad u + c u :
/// |b| bounded by L, |c(x,t)| / (1 + |x|) bounded by L.
struct LowerOrder {
    std::array<SpaceTimeFn, kMaxDim> b{};  // empty entries mean zero
    SpaceTimeFn c{};                       // empty means zero
    double L = 0.0;
};

/// Sampled check of the coefficient bounds at the grid nodes and given times.
/// Throws ConfigError carrying the first violating node.
void validate_lower_order(const LowerOrder& lo, const GaussianGrid& grid, std::span<const double> times);

/// Time-independent potential V(x) = v(|x|) w(x/|x|), either a smooth radial
/// profile or the singular family v(r) = r^{-q}, 0 < q <= 2 (n >= 3).
struct Potential {
    enum class Kind { smooth_radial, singular_radial };

    Kind kind = Kind::smooth_radial;
    RadialFn v;                            // smooth case
    RadialFn v_prime;                      // optional, for the radial bound check
    std::function<double(const Point&)> w; // angular profile, called with a unit vector
    double L = 1.0;                        // sup bound of |w|
    double q = 0.0;                        // singular exponent
    double epsilon = 1e-3;                 // regularization length for evolution

    double value(const Point& x) const;             // unregularized
    double value_regularized(const Point& x) const; // r^2 -> r^2 + eps^2 in the radial factor
};

/// Sampled preconditions: smooth case |r v' + 2v| <= 1 + r^2 at node radii;
/// singular case n >= 3, 0 < q <= 2, and w >= 0 on sampled directions when q < 2.
void validate_potential(const Potential& V, int dim, const GaussianGrid& grid);

struct EvolutionConfig {
    double dt = 1e-4;
    int degree = 8;
    int nodes = 16;
};

struct EvolveStats {
    /// max over steps of the relative energy of the increment discarded by the
    /// degree-D truncation: dt^2 (||G||_quad^2 - ||P_D G||^2) / ||u||^2.
    double truncation_energy = 0.0;
    int steps = 0;
};

/// Exact solution of du/dt = L_gamma u: c_alpha -> c_alpha e^{-|alpha| t}.
SpectralField evolve_pure(const SpectralField& u0, double t);

/// Strang splitting: half-step exact diagonal flow, explicit midpoint step of
/// b . grad u + c u at the quadrature nodes (nodal multiply, re-project),
/// half-step diagonal flow. Second order in dt.
SpectralField evolve_lower_order(const SpectralField& u0, const LowerOrder& lo, const EvolutionConfig& cfg, double t,
                                 EvolveStats* stats = nullptr);

/// Same splitting with nodal multiplication by -V (regularized form).
SpectralField evolve_potential(const SpectralField& u0, const Potential& V, const EvolutionConfig& cfg, double t,
                               EvolveStats* stats = nullptr);

/// Midpoint consistency residual: max over gamma-grid nodes of
/// |(u_after - u_before)/dt - (L_gamma u + rhs)(u_mid)|, u_mid the average field.
/// Pass lo or V for the corresponding right-hand side, neither for the pure flow.
double pde_residual(const SpectralField& u_before, const SpectralField& u_after, const LowerOrder* lo,
                    const Potential* V, double dt, const GaussianGrid& grid);

}  // namespace oulab
