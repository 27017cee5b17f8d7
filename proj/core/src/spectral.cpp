#include "oulab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace oulab {

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// Contract `axis` of the row-major tensor `in` (shape sh, dim d) with the
/// matrix mat (R x C, C == sh[axis]): out[.., r, ..] = sum_c mat[r*C+c] in[.., c, ..].
std::vector<double> apply_axis(std::span<const double> in, std::array<int, kMaxDim> sh, int d, int axis,
                               std::span<const double> mat, int R) {
    const int C = sh[static_cast<std::size_t>(axis)];
    std::size_t inner = 1;
    for (int a = axis + 1; a < d; ++a) inner *= static_cast<std::size_t>(sh[static_cast<std::size_t>(a)]);
    std::size_t outer = 1;
    for (int a = 0; a < axis; ++a) outer *= static_cast<std::size_t>(sh[static_cast<std::size_t>(a)]);

    std::vector<double> out(outer * static_cast<std::size_t>(R) * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        const double* in_o = in.data() + o * static_cast<std::size_t>(C) * inner;
        double* out_o = out.data() + o * static_cast<std::size_t>(R) * inner;
        for (int r = 0; r < R; ++r) {
            const double* mrow = mat.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(C);
            double* dst = out_o + static_cast<std::size_t>(r) * inner;
            for (int c = 0; c < C; ++c) {
                const double m = mrow[c];
                if (m == 0.0) continue;
                const double* src = in_o + static_cast<std::size_t>(c) * inner;
                for (std::size_t k = 0; k < inner; ++k) dst[k] += m * src[k];
            }
        }
    }
    return out;
}

/// Vandermonde of the orthonormal basis at the grid's axis nodes: V[j*(D+1)+a] = he_a(x_j).
std::vector<double> vandermonde(const GaussianGrid& grid, int degree) {
    const int m = grid.points_per_axis();
    std::vector<double> V(static_cast<std::size_t>(m) * static_cast<std::size_t>(degree + 1));
    for (int j = 0; j < m; ++j) {
        hermite_normalized(grid.axis_nodes()[static_cast<std::size_t>(j)], degree,
                           std::span<double>(V.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(degree + 1),
                                             static_cast<std::size_t>(degree + 1)));
    }
    return V;
}

}  // namespace

SpectralField::SpectralField(int dim, int max_degree, double time) : dim_(dim), max_degree_(max_degree), time_(time) {
    if (dim < 1 || dim > kMaxDim) throw ConfigError("field dimension " + std::to_string(dim) + " out of range {1,2,3}");
    if (max_degree < 0) throw ConfigError("field max_degree must be nonnegative");
    coeffs_.assign(ipow(static_cast<std::size_t>(max_degree + 1), dim), 0.0);
}

SpectralField SpectralField::hermite_mode(int dim, std::span<const int> alpha, double coeff, double time, int degree) {
    if (static_cast<int>(alpha.size()) != dim) throw ConfigError("hermite mode multi-index length must equal dim");
    int amax = 0;
    for (int a : alpha) {
        if (a < 0) throw ConfigError("hermite mode indices must be nonnegative");
        amax = std::max(amax, a);
    }
    SpectralField f(dim, degree < 0 ? amax : degree, time);
    f.set_coeff(alpha, coeff);
    return f;
}

namespace {
std::size_t flat_index(std::span<const int> alpha, int dim, int max_degree) {
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) {
        const int k = alpha[static_cast<std::size_t>(a)];
        if (k < 0 || k > max_degree) throw ConfigError("multi-index component out of range for field degree");
        idx = idx * static_cast<std::size_t>(max_degree + 1) + static_cast<std::size_t>(k);
    }
    return idx;
}
}  // namespace

double SpectralField::coeff(std::span<const int> alpha) const { return coeffs_[flat_index(alpha, dim_, max_degree_)]; }

void SpectralField::set_coeff(std::span<const int> alpha, double value) {
    coeffs_[flat_index(alpha, dim_, max_degree_)] = value;
}

void SpectralField::add_coeff(std::span<const int> alpha, double value) {
    coeffs_[flat_index(alpha, dim_, max_degree_)] += value;
}

int SpectralField::total_degree(std::size_t flat) const {
    int deg = 0;
    for (int a = 0; a < dim_; ++a) {
        deg += static_cast<int>(flat % static_cast<std::size_t>(max_degree_ + 1));
        flat /= static_cast<std::size_t>(max_degree_ + 1);
    }
    return deg;
}

double SpectralField::norm() const {
    return std::sqrt(pairwise_sum(coeffs_.size(), [&](std::size_t i) { return coeffs_[i] * coeffs_[i]; }));
}

double SpectralField::evaluate(const Point& p) const {
    const int D = max_degree_;
    std::array<std::vector<double>, kMaxDim> he;
    for (int a = 0; a < dim_; ++a) {
        he[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(D + 1));
        hermite_normalized(p[a], D, he[static_cast<std::size_t>(a)]);
    }
    double acc = 0.0;
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0.0) continue;
        std::size_t rest = i;
        double basis = 1.0;
        for (int a = dim_ - 1; a >= 0; --a) {
            basis *= he[static_cast<std::size_t>(a)][rest % static_cast<std::size_t>(D + 1)];
            rest /= static_cast<std::size_t>(D + 1);
        }
        acc += coeffs_[i] * basis;
    }
    return acc;
}

SpectralField SpectralField::derivative(int axis) const {
    if (axis < 0 || axis >= dim_) throw ConfigError("derivative axis out of range");
    SpectralField out(dim_, max_degree_, time_);
    const std::size_t Dp1 = static_cast<std::size_t>(max_degree_ + 1);
    std::size_t inner = 1;
    for (int a = axis + 1; a < dim_; ++a) inner *= Dp1;
    std::size_t outer = 1;
    for (int a = 0; a < axis; ++a) outer *= Dp1;
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t k = 1; k < Dp1; ++k) {
            const double sq = std::sqrt(static_cast<double>(k));
            const double* src = coeffs_.data() + (o * Dp1 + k) * inner;
            double* dst = out.coeffs_.data() + (o * Dp1 + (k - 1)) * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[i] += sq * src[i];
        }
    }
    return out;
}

std::vector<SpectralField> SpectralField::gradient() const {
    std::vector<SpectralField> g;
    g.reserve(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a) g.push_back(derivative(a));
    return g;
}

SpectralField SpectralField::resized(int new_degree) const {
    SpectralField out(dim_, new_degree, time_);
    const std::size_t sD = static_cast<std::size_t>(max_degree_ + 1);
    const std::size_t dD = static_cast<std::size_t>(new_degree + 1);
    const std::size_t common = std::min(sD, dD);
    std::array<std::size_t, kMaxDim> idx{0, 0, 0};
    // walk the common sub-box
    while (true) {
        std::size_t si = 0, di = 0;
        for (int a = 0; a < dim_; ++a) {
            si = si * sD + idx[static_cast<std::size_t>(a)];
            di = di * dD + idx[static_cast<std::size_t>(a)];
        }
        out.coeffs_[di] = coeffs_[si];
        int a = dim_ - 1;
        for (; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < common) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (o.dim_ != dim_ || o.max_degree_ != max_degree_) throw ConfigError("field shape mismatch in +=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (double& c : coeffs_) c *= a;
    return *this;
}

void SpectralField::axpy(double a, const SpectralField& o) {
    if (o.dim_ != dim_ || o.max_degree_ != max_degree_) throw ConfigError("field shape mismatch in axpy");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
}

SpectralField project(const PointFn& f, int degree, const GaussianGrid& grid) {
    if (grid.scale() != 1.0) throw ConfigError("projection requires the unit-variance (dgamma) grid");
    std::vector<double> nodal(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point p = grid.node(i);
        nodal[i] = f(p);
        if (!std::isfinite(nodal[i])) throw EvalError("non-finite function value at node " + format_point(p));
    }
    return project_nodal(nodal, degree, grid);
}

SpectralField project_nodal(std::span<const double> nodal, int degree, const GaussianGrid& grid, double time) {
    if (grid.scale() != 1.0) throw ConfigError("projection requires the unit-variance (dgamma) grid");
    const int m = grid.points_per_axis();
    if (m < degree + 1)
        throw ConfigError("quadrature order m=" + std::to_string(m) + " insufficient for projection degree D=" +
                          std::to_string(degree) + " (need m >= D+1)");
    if (nodal.size() != grid.size()) throw ConfigError("nodal data size does not match grid");

    // Per-axis matrix Vw[a*m + j] = he_a(x_j) * w_j.
    const std::vector<double> V = vandermonde(grid, degree);
    std::vector<double> Vw(static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(m));
    for (int a = 0; a <= degree; ++a)
        for (int j = 0; j < m; ++j)
            Vw[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                V[static_cast<std::size_t>(j) * static_cast<std::size_t>(degree + 1) + static_cast<std::size_t>(a)] *
                grid.axis_weights()[static_cast<std::size_t>(j)];

    const int d = grid.dim();
    std::array<int, kMaxDim> sh{1, 1, 1};
    for (int a = 0; a < d; ++a) sh[static_cast<std::size_t>(a)] = m;
    std::vector<double> work(nodal.begin(), nodal.end());
    for (int a = 0; a < d; ++a) {
        work = apply_axis(work, sh, d, a, Vw, degree + 1);
        sh[static_cast<std::size_t>(a)] = degree + 1;
    }

    SpectralField out(d, degree, time);
    std::copy(work.begin(), work.end(), out.coeffs().begin());
    return out;
}

std::vector<double> synthesize(const SpectralField& u, const GaussianGrid& grid) {
    if (grid.dim() != u.dim()) throw ConfigError("grid/field dimension mismatch in synthesize");
    const int m = grid.points_per_axis();
    const int D = u.max_degree();
    const std::vector<double> V = vandermonde(grid, D);  // V[j*(D+1)+a]

    const int d = u.dim();
    std::array<int, kMaxDim> sh{1, 1, 1};
    for (int a = 0; a < d; ++a) sh[static_cast<std::size_t>(a)] = D + 1;
    std::vector<double> work(u.coeffs().begin(), u.coeffs().end());
    for (int a = 0; a < d; ++a) {
        work = apply_axis(work, sh, d, a, V, m);
        sh[static_cast<std::size_t>(a)] = m;
    }
    return work;
}

double nodal_energy(std::span<const double> nodal, const GaussianGrid& grid) {
    if (nodal.size() != grid.size()) throw ConfigError("nodal data size does not match grid");
    return pairwise_sum(grid.size(), [&](std::size_t i) { return grid.weight(i) * nodal[i] * nodal[i]; });
}

}  // namespace oulab
