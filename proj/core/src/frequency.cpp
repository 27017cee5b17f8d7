#include "oulab/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

namespace oulab {

HorizonT0 compute_T0(double A, double T) {
    if (!(A > 0.0) || !std::isfinite(A)) throw ConfigError("horizon formula requires A > 0");
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("horizon formula requires T > 0");
    HorizonT0 h;
    h.A = A;
    h.T = T;
    h.value = 0.5 * std::min(std::log1p(1.0 / (8.0 * (A + std::numbers::pi))), T);
    return h;
}

std::vector<double> geometric_tau_grid(double T0, int points, double lo_frac, double hi_frac) {
    if (!(T0 > 0.0)) throw ConfigError("tau grid requires T0 > 0");
    if (points < 2) throw ConfigError("tau grid needs at least 2 points");
    if (!(lo_frac > 0.0) || !(hi_frac > lo_frac) || hi_frac >= 1.0)
        throw ConfigError("tau grid fractions must satisfy 0 < lo < hi < 1");
    const double lo = std::log(lo_frac * T0), hi = std::log(hi_frac * T0);
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        g[static_cast<std::size_t>(k)] = std::exp(lo + (hi - lo) * static_cast<double>(k) / (points - 1));
    return g;
}

FieldProvider make_pure_provider(SpectralField u0, double t_start) {
    u0.set_time(t_start);
    return [u0 = std::move(u0), t_start](double t) { return evolve_pure(u0, t - t_start); };
}

namespace {

struct EvolvedState {
    SpectralField current;
    EvolutionConfig cfg;
    std::optional<LowerOrder> lo;
    std::optional<Potential> pot;
    std::map<double, SpectralField> cache;
    std::mutex mtx;
    EvolveStats* stats = nullptr;

    explicit EvolvedState(SpectralField u) : current(std::move(u)) {}
};

}  // namespace

FieldProvider make_evolved_provider(SpectralField u0, double t_start, EvolutionConfig cfg, const LowerOrder* lo,
                                    const Potential* V, EvolveStats* stats) {
    u0.set_time(t_start);
    auto state = std::make_shared<EvolvedState>(std::move(u0));
    state->cfg = cfg;
    state->stats = stats;
    if (lo) state->lo = *lo;
    if (V) state->pot = *V;
    return [state](double t) -> SpectralField {
        std::lock_guard<std::mutex> lock(state->mtx);
        auto it = state->cache.find(t);
        if (it != state->cache.end()) return it->second;
        const double leg = t - state->current.time();
        if (leg < -1e-12)
            throw ConfigError("evolved field provider queried backwards in time (t=" + format_double(t) + ")");
        if (leg > 1e-12) {
            // integer number of near-dt steps per leg
            const int steps = std::max(1, static_cast<int>(std::llround(leg / state->cfg.dt)));
            EvolutionConfig leg_cfg = state->cfg;
            leg_cfg.dt = leg / steps;
            EvolveStats leg_stats;
            if (state->pot)
                state->current = evolve_potential(state->current, *state->pot, leg_cfg, leg, &leg_stats);
            else if (state->lo)
                state->current = evolve_lower_order(state->current, *state->lo, leg_cfg, leg, &leg_stats);
            else
                state->current = evolve_pure(state->current, leg);
            if (state->stats) {
                state->stats->truncation_energy = std::max(state->stats->truncation_energy, leg_stats.truncation_energy);
                state->stats->steps += leg_stats.steps;
            }
        }
        state->current.set_time(t);
        state->cache.emplace(t, state->current);
        return state->current;
    };
}

double H_of_tau(const SpectralField& u, double tau, const GaussianGrid& composite) {
    require_composite_grid(composite, tau);
    const std::vector<double> un = synthesize(u, composite);
    return nodal_energy(un, composite);
}

double I_of_tau(const SpectralField& u, double tau, const GaussianGrid& composite, const Potential* V) {
    require_composite_grid(composite, tau);
    double acc = 0.0;
    for (int a = 0; a < u.dim(); ++a) {
        const std::vector<double> g = synthesize(u.derivative(a), composite);
        acc += nodal_energy(g, composite);
    }
    if (V) {
        const std::vector<double> un = synthesize(u, composite);
        acc += pairwise_sum(composite.size(), [&](std::size_t i) {
            const Point p = composite.node(i);
            const double v = V->value(p);
            if (!std::isfinite(v)) throw EvalError("non-finite potential value at node " + format_point(p));
            return composite.weight(i) * v * un[i] * un[i];
        });
    }
    return acc;
}

double N_of_tau(double H, double I, double tau) {
    if (!(H > 0.0)) throw EvalError("frequency undefined: H <= 0 (degenerate trace)");
    return variance_s(tau) * I / H;
}

namespace {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const int nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mtx;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = static_cast<std::size_t>(t); i < n; i += static_cast<std::size_t>(nt)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

/// Derivative of y on the (nonuniform) grid nu = log(tau) by three-point
/// stencils, converted back with dN/dtau = (dN/dnu)/tau.
std::vector<double> log_grid_derivative(std::span<const double> tau, std::span<const double> y) {
    const std::size_t n = tau.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> nu(n);
    for (std::size_t k = 0; k < n; ++k) nu[k] = std::log(tau[k]);
    auto three_point = [&](std::size_t at, std::size_t a, std::size_t b, std::size_t c) {
        // derivative at nu[at] of the quadratic through (nu[a..c], y[a..c])
        const double xa = nu[a] - nu[at], xb = nu[b] - nu[at], xc = nu[c] - nu[at];
        const double wa = -(xb + xc) / ((xa - xb) * (xa - xc));
        const double wb = -(xa + xc) / ((xb - xa) * (xb - xc));
        const double wc = -(xa + xb) / ((xc - xa) * (xc - xb));
        return wa * y[a] + wb * y[b] + wc * y[c];
    };
    if (n == 2) {
        const double slope = (y[1] - y[0]) / (nu[1] - nu[0]);
        d[0] = slope / tau[0];
        d[1] = slope / tau[1];
        return d;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t a, b, c;
        if (k == 0) {
            a = 0, b = 1, c = 2;
        } else if (k == n - 1) {
            a = n - 1, b = n - 2, c = n - 3;
        } else {
            a = k, b = k - 1, c = k + 1;
        }
        d[k] = three_point(k, a, b, c) / tau[k];
    }
    return d;
}

}  // namespace

FrequencyTrace trace_frequency(const FieldProvider& provider, std::span<const double> tau_grid, const TraceRequest& req) {
    const std::size_t n = tau_grid.size();
    if (n == 0) throw ConfigError("empty tau grid");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (!(tau_grid[k] < tau_grid[k + 1])) throw ConfigError("tau grid must be strictly increasing");
    if (!(tau_grid[0] > 0.0)) throw ConfigError("tau grid must be positive");

    // Fetch fields in ascending time order (descending tau); stepped providers
    // require monotone queries.
    std::vector<SpectralField> fields;
    fields.reserve(n);
    for (std::size_t k = n; k-- > 0;) fields.push_back(provider(req.shift - tau_grid[k]));
    std::reverse(fields.begin(), fields.end());

    const bool smooth_pot = req.potential && req.potential->kind == Potential::Kind::smooth_radial;
    const bool has_xdv = req.potential && (req.potential->kind == Potential::Kind::singular_radial ||
                                           (smooth_pot && req.potential->v_prime));

    FrequencyTrace tr;
    tr.scenario = req.scenario;
    tr.dim = req.dim;
    tr.T0 = req.T0;
    tr.A = req.A;
    tr.L = req.L;
    tr.shift = req.shift;
    tr.tau.assign(n, 0.0);
    tr.H.assign(n, 0.0);
    tr.I.assign(n, 0.0);
    tr.N.assign(n, 0.0);
    tr.flags.assign(n, "");
    std::vector<double> norms(n, 0.0);
    if (req.potential) {
        tr.Igrad.assign(n, 0.0);
        tr.Iv.assign(n, 0.0);
    }
    if (smooth_pot) tr.Q.assign(n, 0.0);
    if (has_xdv) tr.XdVp2V.assign(n, 0.0);
    if (req.lower) tr.Fsq.assign(n, 0.0);

    parallel_for(n, req.threads, [&](std::size_t k) {
        const double tau = tau_grid[k];
        const SpectralField& u = fields[k];
        const GaussianGrid comp = composite_grid(req.dim, req.nodes, tau);
        const std::vector<double> un = synthesize(u, comp);

        tr.tau[k] = tau;
        norms[k] = u.norm();
        const double H = nodal_energy(un, comp);
        tr.H[k] = H;

        std::vector<std::vector<double>> grads;
        grads.reserve(static_cast<std::size_t>(u.dim()));
        for (int a = 0; a < u.dim(); ++a) grads.push_back(synthesize(u.derivative(a), comp));
        double igrad = 0.0;
        for (const auto& g : grads) igrad += nodal_energy(g, comp);

        double iv = 0.0;
        if (req.potential) {
            iv = pairwise_sum(comp.size(), [&](std::size_t i) {
                const Point p = comp.node(i);
                const double v = req.potential->value(p);
                if (!std::isfinite(v)) throw EvalError("non-finite potential value at node " + format_point(p));
                return comp.weight(i) * v * un[i] * un[i];
            });
            tr.Igrad[k] = igrad;
            tr.Iv[k] = iv;
        }
        tr.I[k] = igrad + iv;

        if (smooth_pot) {
            tr.Q[k] = pairwise_sum(comp.size(), [&](std::size_t i) {
                return comp.weight(i) * (1.0 + comp.node(i).norm_sq()) * un[i] * un[i];
            });
        }
        if (has_xdv) {
            if (req.potential->kind == Potential::Kind::singular_radial) {
                tr.XdVp2V[k] = (2.0 - req.potential->q) * iv;
            } else {
                tr.XdVp2V[k] = pairwise_sum(comp.size(), [&](std::size_t i) {
                    const Point p = comp.node(i);
                    const double r = p.norm();
                    if (r == 0.0) return 0.0;
                    Point theta = p;
                    for (int a = 0; a < p.dim; ++a) theta[a] /= r;
                    const double radial = r * req.potential->v_prime(r) + 2.0 * req.potential->v(r);
                    const double ang = req.potential->w ? req.potential->w(theta) : 1.0;
                    return comp.weight(i) * radial * ang * un[i] * un[i];
                });
            }
        }
        if (req.lower) {
            const double t_field = u.time();
            tr.Fsq[k] = pairwise_sum(comp.size(), [&](std::size_t i) {
                const Point p = comp.node(i);
                double F = 0.0;
                for (int a = 0; a < u.dim(); ++a)
                    if (req.lower->b[static_cast<std::size_t>(a)])
                        F += req.lower->b[static_cast<std::size_t>(a)](p, t_field) * grads[static_cast<std::size_t>(a)][i];
                if (req.lower->c) F += req.lower->c(p, t_field) * un[i];
                return comp.weight(i) * F * F;
            });
        }
    });

    // degenerate truncation: first tau with H below 1e-14 x squared field norm
    std::size_t keep = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (tr.H[k] < 1e-14 * norms[k] * norms[k] || !(tr.H[k] > 0.0)) {
            tr.flags[k] = "degenerate";
            tr.truncated = true;
            keep = k + 1;
            break;
        }
        tr.N[k] = variance_s(tr.tau[k]) * tr.I[k] / tr.H[k];
    }
    auto shrink = [&](std::vector<double>& v) { if (!v.empty()) v.resize(std::min(v.size(), keep)); };
    if (keep < n) {
        shrink(tr.tau);
        shrink(tr.H);
        shrink(tr.I);
        shrink(tr.N);
        shrink(tr.Igrad);
        shrink(tr.Iv);
        shrink(tr.Fsq);
        shrink(tr.Q);
        shrink(tr.XdVp2V);
        tr.flags.resize(keep);
    }

    const std::size_t rows = tr.tau.size();
    const std::size_t smooth_rows = tr.truncated ? rows - 1 : rows;
    tr.N_prime.assign(rows, 0.0);
    if (smooth_rows >= 2) {
        std::vector<double> d = log_grid_derivative(std::span<const double>(tr.tau.data(), smooth_rows),
                                                    std::span<const double>(tr.N.data(), smooth_rows));
        std::copy(d.begin(), d.end(), tr.N_prime.begin());
    }
    return tr;
}

CheckReport check_monotone(const FrequencyTrace& trace, double tol) {
    CheckReport rep;
    rep.check = "monotone";
    rep.anchor = "Theorem 1.2";
    rep.inputs.emplace_back("tol", tol);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_k = 0;
    const std::size_t n = trace.N.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!trace.flags[k].empty() || !trace.flags[k + 1].empty()) break;
        const double drop = trace.N[k] - trace.N[k + 1];
        if (drop > worst) {
            worst = drop;
            worst_k = k;
        }
    }
    if (n < 2) worst = 0.0;
    rep.lhs = worst;
    rep.rhs = tol;
    rep.margin = tol - worst;
    rep.pass = worst <= tol;
    if (!rep.pass) rep.detail = "largest drop at grid index " + std::to_string(worst_k);
    return rep;
}

CheckReport check_almost_monotone(const FrequencyTrace& trace, double L, int n_dim, double tol) {
    CheckReport rep;
    rep.check = "almost_monotone";
    rep.anchor = "Lemma 3.2 / Eq. 3.3";
    const double C = (n_dim + 1) * L * L;
    rep.inputs.emplace_back("C", C);
    rep.inputs.emplace_back("L", L);
    rep.inputs.emplace_back("n", n_dim);
    rep.inputs.emplace_back("tol", tol);

    const std::size_t n = trace.N.size();
    const double tau_cap = trace.T0 > 0.0 ? trace.T0 / 2.0 : std::numeric_limits<double>::infinity();

    double worst_sharp = 0.0, worst_loose = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (!(trace.tau[j] < tau_cap)) break;
        if (!trace.flags[j].empty()) break;
        for (std::size_t i = 0; i < j; ++i) {
            const double num = trace.N[i] + 1.0;
            const double den = trace.N[j] + 1.0;
            if (!(den > 0.0)) continue;
            const double sharp = num / (std::exp(C * (trace.tau[j] - trace.tau[i])) * den);
            const double loose = num / (std::exp(C) * den);
            if (sharp > worst_sharp) {
                worst_sharp = sharp;
                wi = i;
                wj = j;
            }
            worst_loose = std::max(worst_loose, loose);
        }
    }

    double nprime_scale = 1.0;
    for (std::size_t k = 0; k < n; ++k) nprime_scale = std::max(nprime_scale, std::abs(trace.N_prime[k]));
    double worst_diff = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        if (!trace.flags[k].empty()) break;
        if (!(trace.tau[k] < tau_cap)) break;
        worst_diff = std::max(worst_diff, -(trace.N_prime[k] + C * (trace.N[k] + 1.0)));
    }
    if (!std::isfinite(worst_diff)) worst_diff = 0.0;

    const bool pass_sharp = worst_sharp <= 1.0 + tol;
    const bool pass_diff = worst_diff <= tol * nprime_scale;
    rep.lhs = worst_sharp;
    rep.rhs = 1.0 + tol;
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = pass_sharp && pass_diff;
    rep.inputs.emplace_back("worst_pair_ratio_sharp", worst_sharp);
    rep.inputs.emplace_back("worst_pair_ratio_loose", worst_loose);
    rep.inputs.emplace_back("worst_differential_excess", worst_diff);
    if (!rep.pass)
        rep.detail = "worst pair (" + format_double(trace.tau[wi]) + ", " + format_double(trace.tau[wj]) + ")";
    return rep;
}

HBoundReport check_H_lower_bound(const FrequencyTrace& trace, double tau0, std::optional<double> C2_opt, double tol) {
    HBoundReport out;
    const std::size_t n = trace.tau.size();
    std::size_t j0 = n;
    for (std::size_t k = 0; k < n; ++k)
        if (trace.tau[k] <= tau0 && trace.flags[k].empty()) j0 = k;
    if (j0 == n || j0 == 0) throw ConfigError("tau0 must lie inside the trace grid with at least one point below it");

    double C2;
    if (C2_opt) {
        C2 = *C2_opt;
    } else {
        double supN = 0.0;
        for (std::size_t k = 0; k <= j0; ++k) supN = std::max(supN, trace.N[k]);
        C2 = 2.0 * std::max(1.0, (trace.dim + 2) * trace.L * trace.L) * (supN + 1.0) * std::exp(2.0 * tau0);
    }
    out.C2 = C2;

    const double H0 = trace.H[j0];
    const double s0 = variance_s(trace.tau[j0]);
    double min_sharp = std::numeric_limits<double>::infinity();
    double min_tau = std::numeric_limits<double>::infinity();
    std::size_t wk = 0;
    for (std::size_t k = 0; k < j0; ++k) {
        const double s = variance_s(trace.tau[k]);
        const double sharp_rhs = H0 * std::pow(s / s0, C2);
        const double tau_rhs = H0 * std::pow(trace.tau[k], C2) / std::pow(s0, C2);
        const double rs = trace.H[k] / sharp_rhs;
        if (rs < min_sharp) {
            min_sharp = rs;
            wk = k;
        }
        min_tau = std::min(min_tau, trace.H[k] / tau_rhs);
    }

    auto make = [&](const char* name, double min_ratio) {
        CheckReport r;
        r.check = name;
        r.anchor = "Theorem 1.3 proof / H lower bound";
        r.inputs.emplace_back("tau0", tau0);
        r.inputs.emplace_back("C2", C2);
        r.inputs.emplace_back("tol", tol);
        r.lhs = min_ratio;
        r.rhs = 1.0 - tol;
        r.margin = min_ratio - (1.0 - tol);
        r.pass = min_ratio >= 1.0 - tol;
        if (!r.pass) r.detail = "first violated near tau=" + format_double(trace.tau[wk]);
        return r;
    };
    out.sharp = make("h_lower_bound", min_sharp);
    out.tau_form = make("h_lower_bound_tau_form", min_tau);
    return out;
}

CheckReport check_potential_monotone(const FrequencyTrace& trace, double tol) {
    CheckReport rep;
    rep.check = "potential_monotone";
    rep.anchor = "Eq. 4.3 / q = 2";
    rep.inputs.emplace_back("tol", tol);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t wk = 0;
    for (std::size_t k = 0; k < trace.N_prime.size(); ++k) {
        if (!trace.flags[k].empty()) break;
        double bound = 0.0;
        if (!trace.XdVp2V.empty() && trace.H[k] > 0.0)
            bound = std::exp(-2.0 * trace.tau[k]) * trace.XdVp2V[k] / trace.H[k];
        const double slack = trace.N_prime[k] - bound;
        if (slack < worst) {
            worst = slack;
            wk = k;
        }
    }
    if (!std::isfinite(worst)) worst = 0.0;
    rep.lhs = worst;
    rep.rhs = -tol;
    rep.margin = worst + tol;
    rep.pass = worst >= -tol;
    if (!rep.pass) rep.detail = "worst slack at tau=" + format_double(trace.tau[wk]);
    return rep;
}

CheckReport check_lemma22_bound(const FrequencyTrace& trace, double tol) {
    CheckReport rep;
    rep.check = "frequency_derivative_bound";
    rep.anchor = "Lemma 2.2";
    rep.inputs.emplace_back("tol", tol);
    if (trace.Fsq.empty()) throw ConfigError("trace lacks the F^2 column required by the derivative bound");
    double scale = 1.0;
    for (double d : trace.N_prime) scale = std::max(scale, std::abs(d));
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < trace.N_prime.size(); ++k) {
        if (!trace.flags[k].empty()) break;
        const double bound = -variance_s(trace.tau[k]) * trace.Fsq[k] / (2.0 * trace.H[k]);
        worst = std::min(worst, trace.N_prime[k] - bound);
    }
    if (!std::isfinite(worst)) worst = 0.0;
    rep.lhs = worst;
    rep.rhs = -tol * scale;
    rep.margin = worst + tol * scale;
    rep.pass = worst >= -tol * scale;
    return rep;
}

CheckReport check_reconstruction(const FrequencyTrace& trace) {
    CheckReport rep;
    rep.check = "reconstruction";
    rep.anchor = "Eq. 2.10";
    double worst = 0.0;
    for (std::size_t k = 0; k < trace.N.size(); ++k) {
        if (!trace.flags[k].empty()) break;
        const double expect = variance_s(trace.tau[k]) * trace.I[k] / trace.H[k];
        worst = std::max(worst, std::abs(trace.N[k] - expect) / std::max(1.0, std::abs(expect)));
    }
    rep.lhs = worst;
    rep.rhs = 1e-12;
    rep.margin = rep.rhs - worst;
    rep.pass = worst <= 1e-12;
    return rep;
}

CheckReport check_H_prime_identity(const FrequencyTrace& trace, double tol) {
    CheckReport rep;
    rep.check = "h_prime_identity";
    rep.anchor = "Lemma 2.2 / H' = 2I";
    rep.inputs.emplace_back("tol", tol);
    const std::size_t n = trace.truncated && !trace.tau.empty() ? trace.tau.size() - 1 : trace.tau.size();
    if (n < 3) throw ConfigError("H' identity needs at least 3 smooth trace points");
    const std::vector<double> dH = log_grid_derivative(std::span<const double>(trace.tau.data(), n),
                                                       std::span<const double>(trace.H.data(), n));
    // endpoints carry one-sided stencils; compare interior points only
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double expect = 2.0 * trace.I[k];
        worst = std::max(worst, std::abs(dH[k] - expect) / std::max(std::abs(expect), 1e-300));
    }
    rep.lhs = worst;
    rep.rhs = tol;
    rep.margin = tol - worst;
    rep.pass = worst <= tol;
    return rep;
}

DualityResult duality_pairing(const FieldProvider& provider, double S, std::span<const double> tau_grid, double rel_tol,
                              double abs_tol) {
    if (!(S > 0.0)) throw ConfigError("duality pairing requires S > 0");
    DualityResult out;
    const std::size_t n = tau_grid.size();
    if (n == 0) throw ConfigError("empty tau grid");
    for (std::size_t k = 0; k < n; ++k)
        if (!(tau_grid[k] > 0.0) || !(tau_grid[k] < 2.0 * S)) throw ConfigError("duality grid must lie in (0, 2S)");

    // collect all required times, query ascending (stepped providers)
    std::vector<double> times;
    times.reserve(2 * n);
    for (double tau : tau_grid) {
        times.push_back(tau - 2.0 * S);
        times.push_back(-tau);
    }
    std::sort(times.begin(), times.end());
    std::map<double, SpectralField> at;
    for (double t : times)
        if (!at.count(t)) at.emplace(t, provider(t));

    out.tau.assign(tau_grid.begin(), tau_grid.end());
    out.D.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const SpectralField& a = at.at(tau_grid[k] - 2.0 * S);
        const SpectralField& b = at.at(-tau_grid[k]);
        if (a.coeff_count() != b.coeff_count()) throw ConfigError("field shape mismatch in duality pairing");
        const auto ca = a.coeffs();
        const auto cb = b.coeffs();
        out.D[k] = pairwise_sum(ca.size(), [&](std::size_t i) { return ca[i] * cb[i]; });
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(out.D[k] - out.D[0]));
    CheckReport rep;
    rep.check = "duality_pairing";
    rep.anchor = "Theorem 1.4 proof / duality pairing";
    rep.inputs.emplace_back("S", S);
    rep.inputs.emplace_back("rel_tol", rel_tol);
    rep.inputs.emplace_back("abs_tol", abs_tol);
    rep.inputs.emplace_back("D0", out.D[0]);
    rep.lhs = worst;
    rep.rhs = rel_tol * std::abs(out.D[0]) + abs_tol;
    rep.margin = rep.rhs - worst;
    rep.pass = worst <= rep.rhs;
    out.report = rep;
    return out;
}

}  // namespace oulab
