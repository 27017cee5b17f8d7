#include "oulab/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>

namespace oulab {

namespace {

std::shared_ptr<const GaussHermiteRule> build_rule(int m) {
    // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite recurrence
    // He_{k+1} = x He_k - k He_{k-1}: zero diagonal, off-diagonal sqrt(k).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConfigError("Gauss-Hermite eigenproblem failed for m=" + std::to_string(m));

    auto rule = std::make_shared<GaussHermiteRule>();
    rule->m = m;
    rule->nodes.resize(static_cast<std::size_t>(m));
    rule->weights.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) rule->nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);

    // Enforce exact x -> -x symmetry of the nodes.
    for (int i = 0; i < m / 2; ++i) {
        const int j = m - 1 - i;
        const double p = 0.5 * (rule->nodes[static_cast<std::size_t>(j)] - rule->nodes[static_cast<std::size_t>(i)]);
        rule->nodes[static_cast<std::size_t>(i)] = -p;
        rule->nodes[static_cast<std::size_t>(j)] = p;
    }
    if (m % 2 == 1) rule->nodes[static_cast<std::size_t>(m / 2)] = 0.0;

    // Christoffel weights w_j = 1 / sum_{k<m} he_k(x_j)^2; unlike the squared
    // first eigenvector components these keep relative accuracy in the tails.
    std::vector<double> he(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        hermite_normalized(rule->nodes[static_cast<std::size_t>(j)], m - 1, he);
        double denom = 0.0;
        for (double v : he) denom += v * v;
        rule->weights[static_cast<std::size_t>(j)] = 1.0 / denom;
    }
    for (int i = 0; i < m / 2; ++i) {
        const int j = m - 1 - i;
        const double w = 0.5 * (rule->weights[static_cast<std::size_t>(i)] + rule->weights[static_cast<std::size_t>(j)]);
        rule->weights[static_cast<std::size_t>(i)] = w;
        rule->weights[static_cast<std::size_t>(j)] = w;
    }

    const double total = pairwise_sum(rule->weights);
    for (double& w : rule->weights) w /= total;
    return rule;
}

}  // namespace

std::shared_ptr<const GaussHermiteRule> gauss_hermite(int m) {
    if (m < 2 || m > 256) throw ConfigError("Gauss-Hermite node count m=" + std::to_string(m) + " out of range [2, 256]");

    static std::mutex mtx;
    static std::map<int, std::shared_ptr<const GaussHermiteRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto rule = build_rule(m);
    cache.emplace(m, rule);
    return rule;
}

double hermite_He(int k, double x) {
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int j = 1; j < k; ++j) {
        const double next = x * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_normalized(double x, int max_degree, std::span<double> out) {
    out[0] = 1.0;
    if (max_degree == 0) return;
    out[1] = x;
    for (int k = 1; k < max_degree; ++k) {
        const std::size_t ku = static_cast<std::size_t>(k);
        out[ku + 1] = (x * out[ku] - std::sqrt(static_cast<double>(k)) * out[ku - 1]) / std::sqrt(static_cast<double>(k + 1));
    }
}

}  // namespace oulab
