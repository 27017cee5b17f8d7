#pragma once

#include <optional>
#include <string>
#include <utility>

#include "oulab/dynamics.hpp"
#include "oulab/mehler.hpp"

namespace oulab {

/// Horizon T0 = (1/2) min{ log(1 + 1/(8(A+pi))), T }.
struct HorizonT0 {
    double A = 0.0;
    double T = 0.0;
    double value = 0.0;
};

HorizonT0 compute_T0(double A, double T);

/// Geometric (log-spaced) tau grid in (0, T0), default 40 points on
/// [T0/100, 0.9 T0].
std::vector<double> geometric_tau_grid(double T0, int points = 40, double lo_frac = 0.01, double hi_frac = 0.9);

/// Outcome of one named verification; serialized as one report row.
struct CheckReport {
    std::string check;
    std::string anchor;  // statement label the check verifies, e.g. "Lemma 3.1 / Eq. 3.2"
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::string detail;
    std::vector<std::pair<std::string, double>> inputs;
};

/// Sampled tau grid with the weighted masses H, I, frequency N and its
/// finite-difference derivative. Optional diagnostic columns are filled when
/// the trace request carries the corresponding coefficients.
struct FrequencyTrace {
    std::vector<double> tau, H, I, N, N_prime;
    std::vector<std::string> flags;  // "" | "degenerate" | "probe"

    std::vector<double> Igrad;     // integral of |grad u|^2 M dgamma (potential mode)
    std::vector<double> Iv;        // integral of V u^2 M dgamma (potential mode)
    std::vector<double> Fsq;       // integral of (b.grad u + c u)^2 M dgamma (lower-order mode)
    std::vector<double> Q;         // integral of (1+|x|^2) u^2 M dgamma (smooth potential mode)
    std::vector<double> XdVp2V;    // integral of (x.grad V + 2V) u^2 M dgamma

    std::string scenario;
    int dim = 1;
    double T0 = 0.0, A = 0.0, L = 0.0, shift = 0.0;
    bool truncated = false;
};

using FieldProvider = std::function<SpectralField(double time)>;

/// Exact eigen-decay provider for the pure flow, posed at (u0, t_start).
FieldProvider make_pure_provider(SpectralField u0, double t_start);

/// Stepped Strang provider; must be queried at nondecreasing times, caches
/// every snapshot it returns. When `stats` is given, the worst per-leg
/// truncation energy is accumulated into it (caller keeps it alive).
FieldProvider make_evolved_provider(SpectralField u0, double t_start, EvolutionConfig cfg, const LowerOrder* lo,
                                    const Potential* V, EvolveStats* stats = nullptr);

double H_of_tau(const SpectralField& u, double tau, const GaussianGrid& composite);
double I_of_tau(const SpectralField& u, double tau, const GaussianGrid& composite, const Potential* V = nullptr);
/// N = (1 - e^{-2 tau}) I / H; requires H > 0.
double N_of_tau(double H, double I, double tau);

struct TraceRequest {
    int dim = 1;
    int nodes = 32;                           // composite quadrature nodes per axis
    const Potential* potential = nullptr;     // include the V-term in I, fill Iv/Q/XdVp2V
    const LowerOrder* lower = nullptr;        // fill Fsq
    double shift = 0.0;                       // N_s: fields at shift - tau, kernel at -tau
    std::string scenario;
    double T0 = 0.0, A = 0.0, L = 0.0;
    int threads = 1;
};

/// Full trace over an increasing tau grid. Truncated (and flagged) at the first
/// tau with H below 1e-14 x the squared field norm.
FrequencyTrace trace_frequency(const FieldProvider& provider, std::span<const double> tau_grid, const TraceRequest& req);

/// N(tau_{k+1}) >= N(tau_k) - tol for consecutive grid points.
CheckReport check_monotone(const FrequencyTrace& trace, double tol);

/// N(tau)+1 <= e^{C (tau0 - tau)} (N(tau0)+1)(1+tol) for grid pairs tau < tau0
/// (< T0/2 when T0 is known), C = (n+1) L^2; plus the pointwise differential
/// form N' >= -C(N+1) - tol_scale. The looser e^C factor is reported alongside.
CheckReport check_almost_monotone(const FrequencyTrace& trace, double L, int n, double tol);

struct HBoundReport {
    CheckReport sharp;     // H(tau) >= H(tau0) (s(tau)/s(tau0))^{C2}
    CheckReport tau_form;  // H(tau) >= H(tau0) tau^{C2} / s(tau0)^{C2}
    double C2 = 0.0;
};

/// Lower bound for H below tau0. When C2 is not supplied it is computed as the
/// diagnostic 2 max(1, (n+2)L^2) (sup N + 1) e^{2 tau0} from the trace.
HBoundReport check_H_lower_bound(const FrequencyTrace& trace, double tau0, std::optional<double> C2, double tol);

/// Potential-mode derivative bound N' >= e^{-2 tau} XdVp2V / H - tol; for the
/// q = 2 singular family the right side vanishes and this is N' >= -tol.
CheckReport check_potential_monotone(const FrequencyTrace& trace, double tol);

/// Direct derivative bound N' >= -(1-e^{-2 tau}) Fsq / (2H) - tol_scale.
CheckReport check_lemma22_bound(const FrequencyTrace& trace, double tol);

/// N equals (1-e^{-2 tau}) I / H pointwise on the emitted trace (1e-12).
CheckReport check_reconstruction(const FrequencyTrace& trace);

/// Pure-heat identity dH/dtau = 2 I, finite differences vs the trace column.
CheckReport check_H_prime_identity(const FrequencyTrace& trace, double tol);

struct DualityResult {
    std::vector<double> tau;
    std::vector<double> D;
    CheckReport report;
};

/// D(tau) = integral of u(., tau - 2S) u(., -tau) dgamma over tau in (0, 2S);
/// constant for solutions of the potential flow. Computed as the coefficient
/// dot product (Parseval).
DualityResult duality_pairing(const FieldProvider& provider, double S, std::span<const double> tau_grid, double rel_tol,
                              double abs_tol);

}  // namespace oulab
