#pragma once

#include <span>
#include <vector>

#include "oulab/gaussian.hpp"

namespace oulab {

/// A function of x represented by coefficients in the orthonormal probabilists'
/// Hermite basis {He_alpha / sqrt(alpha!)}, over the full tensor index set
/// |alpha|_inf <= max_degree, stamped with a time value. Row-major storage with
/// axis 0 slowest. By Parseval, the coefficient norm equals the L^2(dgamma) norm.
class SpectralField {
  public:
    SpectralField(int dim, int max_degree, double time = 0.0);

    /// coeff * he_alpha as a field of degree max(alpha) (or `degree` if given).
    static SpectralField hermite_mode(int dim, std::span<const int> alpha, double coeff = 1.0, double time = 0.0,
                                      int degree = -1);

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    std::size_t coeff_count() const { return coeffs_.size(); }
    std::span<double> coeffs() { return coeffs_; }
    std::span<const double> coeffs() const { return coeffs_; }

    double coeff(std::span<const int> alpha) const;
    void set_coeff(std::span<const int> alpha, double value);
    void add_coeff(std::span<const int> alpha, double value);

    /// Total degree |alpha| = sum alpha_a of the flat coefficient index.
    int total_degree(std::size_t flat) const;

    /// L^2(dgamma) norm via Parseval.
    double norm() const;

    double evaluate(const Point& p) const;

    /// d/dx_a in coefficient space (he_k' = sqrt(k) he_{k-1}); degree drops by one.
    SpectralField derivative(int axis) const;
    std::vector<SpectralField> gradient() const;

    /// Copy with coefficients beyond `new_degree` (per axis) dropped or zero-padded.
    SpectralField resized(int new_degree) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator*=(double a);
    /// this += a * o
    void axpy(double a, const SpectralField& o);

  private:
    int dim_;
    int max_degree_;
    double time_;
    std::vector<double> coeffs_;
};

/// Project a point-evaluable function onto the basis by quadrature:
/// c_alpha = sum_i w_i f(x_i) he_alpha(x_i). Exact for polynomials of degree
/// <= `degree` when m >= degree + 1. Requires the unit-variance grid.
SpectralField project(const PointFn& f, int degree, const GaussianGrid& grid);

/// Values of the field at all grid nodes (any grid scale), row-major flat order.
std::vector<double> synthesize(const SpectralField& u, const GaussianGrid& grid);

/// Quadrature projection of nodal values given on the unit-variance grid.
SpectralField project_nodal(std::span<const double> nodal, int degree, const GaussianGrid& grid, double time = 0.0);

/// sum_i w_i v_i^2 (quadrature estimate of the squared L^2 norm of nodal data).
double nodal_energy(std::span<const double> nodal, const GaussianGrid& grid);

}  // namespace oulab
