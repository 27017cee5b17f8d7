#pragma once

#include <memory>
#include <span>
#include <vector>

#include "oulab/common.hpp"

namespace oulab {

/// One-dimensional Gauss-Hermite rule for the probabilists' weight
/// e^{-x^2/2}/sqrt(2*pi). Weights sum to 1; nodes are symmetric about 0.
struct GaussHermiteRule {
    int m = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights from the symmetric-tridiagonal (Jacobi matrix) eigenproblem,
/// symmetrized in x -> -x and renormalized to unit total weight. 2 <= m <= 256.
std::shared_ptr<const GaussHermiteRule> gauss_hermite(int m);

/// Unnormalized probabilists' Hermite polynomial He_k.
double hermite_He(int k, double x);

/// Orthonormal basis values he_k(x) = He_k(x)/sqrt(k!) for k = 0..max_degree,
/// via the normalized three-term recurrence.
void hermite_normalized(double x, int max_degree, std::span<double> out);

}  // namespace oulab
