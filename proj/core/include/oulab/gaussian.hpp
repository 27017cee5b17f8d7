#pragma once

#include <functional>
#include <memory>
#include <span>

#include "oulab/common.hpp"
#include "oulab/hermite.hpp"

namespace oulab {

/// Growth class G(A, B): |f(x)| <= B * e^{A |x|^2}.
struct GrowthClass {
    double A = 1.0;
    double B = 1.0;
};

void validate_growth_class(const GrowthClass& gc);

using PointFn = std::function<double(const Point&)>;

/// Tensorized Gauss-Hermite grid for a centered isotropic Gaussian probability
/// measure with per-axis standard deviation `scale` (1 for dgamma, sqrt(1-e^{-2tau})
/// for the composite measure M*dgamma). Full tensor product; dim <= 3.
/// Immutable after construction and cheap to copy (the axis rule is shared).
class GaussianGrid {
  public:
    /// Unit-variance grid for dgamma. dim in {1,2,3}, 2 <= m <= 256.
    static GaussianGrid build_gamma(int dim, int m);
    /// Grid for the centered Gaussian with per-axis standard deviation sigma > 0.
    static GaussianGrid build_scaled(int dim, int m, double sigma);

    int dim() const { return dim_; }
    int points_per_axis() const { return m_; }
    double scale() const { return scale_; }
    /// Quadrature integrates polynomials of total degree <= 2m-1 exactly.
    int exact_degree() const { return 2 * m_ - 1; }

    std::size_t size() const { return size_; }
    Point node(std::size_t flat) const;
    double weight(std::size_t flat) const;

    std::span<const double> axis_nodes() const { return axis_nodes_; }   // already scaled
    std::span<const double> axis_weights() const { return rule_->weights; }

  private:
    GaussianGrid(int dim, int m, double scale);

    std::shared_ptr<const GaussHermiteRule> rule_;
    std::vector<double> axis_nodes_;
    int dim_ = 1;
    int m_ = 0;
    double scale_ = 1.0;
    std::size_t size_ = 0;
};

/// Quadrature sum  sum_i w_i f(x_i)  over the grid's own Gaussian measure,
/// accumulated with a deterministic pairwise reduction.
/// Throws EvalError (carrying the node) if f is non-finite at any node.
double integrate_gamma(const PointFn& f, const GaussianGrid& grid);

/// Sampled necessary check of G(A,B)-growth: |f| <= B e^{A|x|^2} at every node.
bool check_growth(const PointFn& f, const GrowthClass& gc, const GaussianGrid& grid);

}  // namespace oulab
