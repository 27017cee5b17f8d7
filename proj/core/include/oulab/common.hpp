#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace oulab {

inline constexpr int kMaxDim = 3;

/// A point in R^n, n <= 3. Unused trailing coordinates stay zero.
struct Point {
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    int dim = 1;

    Point() = default;
    explicit Point(int n) : dim(n) {}
    Point(std::initializer_list<double> v) {
        dim = static_cast<int>(v.size());
        int i = 0;
        for (double c : v) x[static_cast<std::size_t>(i++)] = c;
    }

    double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
    const double& operator[](int i) const { return x[static_cast<std::size_t>(i)]; }

    double norm_sq() const {
        double r = 0;
        for (int i = 0; i < dim; ++i) r += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        return r;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    double dot(const Point& o) const {
        double r = 0;
        for (int i = 0; i < dim; ++i) r += x[static_cast<std::size_t>(i)] * o.x[static_cast<std::size_t>(i)];
        return r;
    }
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (dimensions, node counts, mismatched grids, bad scenario files).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. tau <= 0).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A pointwise evaluation produced a non-finite or otherwise unusable value.
class EvalError : public Error {
  public:
    using Error::Error;
};

/// Coefficient-norm blowup during time stepping.
class InstabilityError : public Error {
  public:
    using Error::Error;
};

namespace detail {
template <class F>
double pairwise_sum_impl(std::size_t begin, std::size_t end, F&& term) {
    const std::size_t n = end - begin;
    if (n <= 64) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum_impl(begin, mid, term) + pairwise_sum_impl(mid, end, term);
}
}  // namespace detail

/// Deterministic pairwise (tree) reduction: the split structure depends only on n,
/// so results are bit-stable for a fixed configuration.
template <class F>
double pairwise_sum(std::size_t n, F&& term) {
    if (n == 0) return 0.0;
    return detail::pairwise_sum_impl(0, n, term);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

/// Shortest round-trip decimal representation (<= 17 significant digits).
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_point(const Point& p) {
    std::string s = "(";
    for (int i = 0; i < p.dim; ++i) {
        if (i) s += ", ";
        s += format_double(p[i]);
    }
    s += ")";
    return s;
}

/// SplitMix64; used instead of <random> distributions so that randomized suites
/// are reproducible across standard library versions.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1].
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Uniform in [lo, hi].
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  private:
    std::uint64_t state_;
};

}  // namespace oulab
