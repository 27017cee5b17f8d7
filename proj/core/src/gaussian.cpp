#include "oulab/gaussian.hpp"

#include <cmath>

namespace oulab {

void validate_growth_class(const GrowthClass& gc) {
    if (!(gc.A > 0.0) || !std::isfinite(gc.A)) throw ConfigError("growth constant A must be finite and positive");
    if (!(gc.B > 0.0) || !std::isfinite(gc.B)) throw ConfigError("growth constant B must be finite and positive");
}

GaussianGrid::GaussianGrid(int dim, int m, double scale) : dim_(dim), m_(m), scale_(scale) {
    if (dim < 1 || dim > kMaxDim) throw ConfigError("grid dimension " + std::to_string(dim) + " out of range {1,2,3}");
    if (m < 2 || m > 256) throw ConfigError("grid node count m=" + std::to_string(m) + " out of range [2, 256]");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("grid scale must be finite and positive");
    rule_ = gauss_hermite(m);
    axis_nodes_.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) axis_nodes_[static_cast<std::size_t>(j)] = scale * rule_->nodes[static_cast<std::size_t>(j)];
    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(m);
}

GaussianGrid GaussianGrid::build_gamma(int dim, int m) { return GaussianGrid(dim, m, 1.0); }

GaussianGrid GaussianGrid::build_scaled(int dim, int m, double sigma) { return GaussianGrid(dim, m, sigma); }

Point GaussianGrid::node(std::size_t flat) const {
    Point p(dim_);
    for (int a = dim_ - 1; a >= 0; --a) {
        p[a] = axis_nodes_[flat % static_cast<std::size_t>(m_)];
        flat /= static_cast<std::size_t>(m_);
    }
    return p;
}

double GaussianGrid::weight(std::size_t flat) const {
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) {
        w *= rule_->weights[flat % static_cast<std::size_t>(m_)];
        flat /= static_cast<std::size_t>(m_);
    }
    return w;
}

double integrate_gamma(const PointFn& f, const GaussianGrid& grid) {
    return pairwise_sum(grid.size(), [&](std::size_t i) {
        const Point p = grid.node(i);
        const double v = f(p);
        if (!std::isfinite(v)) throw EvalError("non-finite integrand value at node " + format_point(p));
        return grid.weight(i) * v;
    });
}

bool check_growth(const PointFn& f, const GrowthClass& gc, const GaussianGrid& grid) {
    validate_growth_class(gc);
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = grid.node(i);
        if (std::abs(f(p)) > gc.B * std::exp(gc.A * p.norm_sq())) return false;
    }
    return true;
}

}  // namespace oulab
