#include "oulab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace oulab {

using nlohmann::json;

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::pure: return "pure";
        case Mode::lower_order: return "lower_order";
        case Mode::potential_smooth: return "potential_smooth";
        case Mode::potential_singular: return "potential_singular";
        case Mode::probe: return "probe";
    }
    return "?";
}

namespace {

[[noreturn]] void missing(const std::string& field) { throw ConfigError("scenario config is missing field '" + field + "'"); }

const json& need(const json& j, const char* field) {
    if (!j.contains(field)) missing(field);
    return j.at(field);
}

double coeff_value(const json& c) {
    if (c.is_number()) return c.get<double>();
    if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
        const double den = c[1].get<double>();
        if (den == 0.0) throw ConfigError("rational coefficient with zero denominator");
        return c[0].get<double>() / den;
    }
    throw ConfigError("coefficient must be a number or a [numerator, denominator] pair");
}

std::vector<int> index_list(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ConfigError(std::string(what) + " must be an array of length dim");
    std::vector<int> v;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<int>() < 0) throw ConfigError(std::string(what) + " entries must be nonnegative integers");
        v.push_back(e.get<int>());
    }
    return v;
}

SpaceTimeFn parse_c(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "zero") return {};
    if (kind == "const") {
        const double v = need(j, "value").get<double>();
        return [v](const Point&, double) { return v; };
    }
    if (kind == "coordinate") {
        const double v = need(j, "value").get<double>();
        const int axis = need(j, "axis").get<int>();
        return [v, axis](const Point& p, double) { return v * p[axis]; };
    }
    if (kind == "linear_sin") {
        const double v = need(j, "value").get<double>();
        return [v](const Point& p, double) {
            double sum = 0;
            for (int a = 0; a < p.dim; ++a) sum += p[a];
            return v * (1.0 + p.norm()) * std::sin(sum);
        };
    }
    throw ConfigError("unknown zeroth-order coefficient kind '" + kind + "'");
}

SpaceTimeFn parse_b_entry(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "zero") return {};
    if (kind == "const") {
        const double v = need(j, "value").get<double>();
        return [v](const Point&, double) { return v; };
    }
    if (kind == "sin_sum" || kind == "cos_sum") {
        const double v = need(j, "value").get<double>();
        const bool sin = kind == "sin_sum";
        return [v, sin](const Point& p, double) {
            double sum = 0;
            for (int a = 0; a < p.dim; ++a) sum += p[a];
            return v * (sin ? std::sin(sum) : std::cos(sum));
        };
    }
    throw ConfigError("unknown drift coefficient kind '" + kind + "'");
}

std::function<double(const Point&)> parse_w(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "const") {
        const double v = need(j, "value").get<double>();
        return [v](const Point&) { return v; };
    }
    if (kind == "theta_sq_diff") {
        const auto axes = need(j, "axes");
        if (!axes.is_array() || axes.size() != 2) throw ConfigError("theta_sq_diff needs 'axes': [a, b]");
        const int a = axes[0].get<int>(), b = axes[1].get<int>();
        return [a, b](const Point& th) { return th[a] * th[a] - th[b] * th[b]; };
    }
    if (kind == "const_plus_theta_sq") {
        const double v = need(j, "value").get<double>();
        const int axis = need(j, "axis").get<int>();
        return [v, axis](const Point& th) { return v + (th[axis] * th[axis] - 1.0 / 3.0); };
    }
    throw ConfigError("unknown angular profile kind '" + kind + "'");
}

std::pair<RadialFn, RadialFn> parse_radial(const json& j) {
    struct Term {
        double coeff;
        double alpha;
    };
    const double c0 = j.value("c0", 0.0);
    const double c2 = j.value("c2", 0.0);
    std::vector<Term> terms;
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            const double alpha = need(t, "alpha").get<double>();
            if (!(alpha > 0.0) || alpha >= 2.0) throw ConfigError("radial term exponents must lie in (0, 2)");
            terms.push_back({need(t, "coeff").get<double>(), alpha});
        }
    }
    RadialFn v = [c0, c2, terms](double r) {
        double acc = c0 + c2 * r * r;
        for (const auto& t : terms) acc += t.coeff * std::pow(r, t.alpha);
        return acc;
    };
    RadialFn vp = [c2, terms](double r) {
        double acc = 2.0 * c2 * r;
        for (const auto& t : terms) acc += t.coeff * t.alpha * std::pow(r, t.alpha - 1.0);
        return acc;
    };
    return {v, vp};
}

SpaceTimeFn parse_probe_fn(const json& j, int K) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "power") {
        return [K](const Point& p, double t) { return std::pow(p.norm_sq() + std::abs(t), K); };
    }
    if (kind == "const") {
        const double v = need(j, "value").get<double>();
        return [v](const Point&, double) { return v; };
    }
    if (kind == "zero") return [](const Point&, double) { return 0.0; };
    throw ConfigError("unknown probe kind '" + kind + "'");
}

CheckSpec parse_check(const json& j) {
    CheckSpec cs;
    cs.name = need(j, "name").get<std::string>();
    cs.tol = j.value("tol", 0.0);
    if (j.contains("C2")) cs.C2 = j.at("C2").get<double>();
    cs.tau0_frac = j.value("tau0_frac", 0.5);
    cs.S_frac = j.value("S_frac", 0.25);
    cs.rel_tol = j.value("rel_tol", 1e-6);
    cs.abs_tol = j.value("abs_tol", 1e-12);
    return cs;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario config is not valid JSON: ") + e.what());
    }

    Scenario sc;
    sc.name = need(j, "name").get<std::string>();
    sc.dim = need(j, "dim").get<int>();
    if (sc.dim < 1 || sc.dim > kMaxDim) throw ConfigError("field 'dim' must be 1, 2 or 3");

    const std::string mode = need(j, "mode").get<std::string>();
    if (mode == "pure") sc.mode = Mode::pure;
    else if (mode == "lower_order") sc.mode = Mode::lower_order;
    else if (mode == "potential_smooth") sc.mode = Mode::potential_smooth;
    else if (mode == "potential_singular") sc.mode = Mode::potential_singular;
    else if (mode == "probe") sc.mode = Mode::probe;
    else throw ConfigError("unknown mode '" + mode + "'");

    if (sc.mode != Mode::probe) {
        const json& init = need(j, "initial");
        if (!init.is_array() || init.empty()) throw ConfigError("field 'initial' must be a nonempty array of terms");
        for (const auto& term : init) {
            const double c = coeff_value(need(term, "coeff"));
            if (term.contains("hermite"))
                sc.hermite_terms.emplace_back(c, index_list(term.at("hermite"), sc.dim, "hermite index"));
            else if (term.contains("monomial"))
                sc.monomial_terms.emplace_back(c, index_list(term.at("monomial"), sc.dim, "monomial exponent"));
            else
                throw ConfigError("initial term needs either 'hermite' or 'monomial'");
        }
    }

    if (j.contains("growth")) {
        sc.growth.A = need(j.at("growth"), "A").get<double>();
        sc.growth.B = need(j.at("growth"), "B").get<double>();
    }
    validate_growth_class(sc.growth);
    sc.T = j.value("T", 10.0);
    if (!(sc.T > 0.0)) throw ConfigError("field 'T' must be positive");

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        sc.grid.degree = g.value("degree", sc.grid.degree);
        sc.grid.nodes = g.value("nodes", sc.grid.nodes);
        sc.grid.dt = g.value("dt", sc.grid.dt);
        sc.grid.refine_tol = g.value("refine_tol", 0.0);
        sc.grid.max_refine = g.value("max_refine", 3);
    }
    if (sc.grid.nodes < sc.grid.degree + 1)
        throw ConfigError("grid requires nodes m >= degree + 1 (got m=" + std::to_string(sc.grid.nodes) +
                          ", D=" + std::to_string(sc.grid.degree) + ")");

    if (j.contains("tau_grid")) {
        const json& g = j.at("tau_grid");
        sc.tau_spec.points = g.value("points", 40);
        sc.tau_spec.lo_frac = g.value("lo_frac", 0.01);
        sc.tau_spec.hi_frac = g.value("hi_frac", 0.9);
    }

    if (sc.mode == Mode::lower_order) {
        const json& co = need(j, "coefficients");
        sc.lower.L = need(co, "L").get<double>();
        if (co.contains("b")) {
            const json& b = co.at("b");
            if (!b.is_array() || static_cast<int>(b.size()) > sc.dim)
                throw ConfigError("'b' must be an array with at most dim entries");
            for (std::size_t a = 0; a < b.size(); ++a) sc.lower.b[a] = parse_b_entry(b[a]);
        }
        if (co.contains("c")) sc.lower.c = parse_c(co.at("c"));
    }

    if (sc.mode == Mode::potential_smooth || sc.mode == Mode::potential_singular) {
        const json& pj = need(j, "potential");
        sc.potential.kind = sc.mode == Mode::potential_smooth ? Potential::Kind::smooth_radial
                                                              : Potential::Kind::singular_radial;
        sc.potential.L = need(pj, "L").get<double>();
        if (pj.contains("w")) sc.potential.w = parse_w(pj.at("w"));
        sc.potential.epsilon = pj.value("epsilon", 1e-3);
        if (sc.mode == Mode::potential_smooth) {
            auto [v, vp] = parse_radial(need(pj, "v"));
            sc.potential.v = v;
            sc.potential.v_prime = vp;
        } else {
            sc.potential.q = need(pj, "q").get<double>();
        }
    }

    if (sc.mode == Mode::probe) {
        const json& pj = need(j, "probe");
        sc.probe.K = need(pj, "K").get<int>();
        sc.probe.C0 = need(pj, "C0").get<double>();
        sc.probe.T1 = need(pj, "T1").get<double>();
        sc.probe.v = parse_probe_fn(pj, sc.probe.K);
        sc.probe.growth = sc.growth;
    }

    for (const auto& cj : need(j, "checks")) sc.checks.push_back(parse_check(cj));
    return sc;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read scenario config " + path.string());
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_scenario_text(text);
}

SpectralField build_initial(const Scenario& sc) {
    SpectralField u(sc.dim, sc.grid.degree);
    for (const auto& [c, alpha] : sc.hermite_terms) {
        for (int k : alpha)
            if (k > sc.grid.degree) throw ConfigError("hermite index exceeds the degree cutoff");
        u.add_coeff(std::span<const int>(alpha.data(), alpha.size()), c);
    }
    if (!sc.monomial_terms.empty()) {
        const GaussianGrid grid = GaussianGrid::build_gamma(sc.dim, sc.grid.nodes);
        for (const auto& [c, expo] : sc.monomial_terms) {
            for (int e : expo)
                if (e > sc.grid.degree) throw ConfigError("monomial exponent exceeds the degree cutoff");
            SpectralField mono = project(
                [&expo](const Point& p) {
                    double v = 1.0;
                    for (std::size_t a = 0; a < expo.size(); ++a)
                        for (int k = 0; k < expo[a]; ++k) v *= p[static_cast<int>(a)];
                    return v;
                },
                sc.grid.degree, grid);
            u.axpy(c, mono);
        }
    }
    if (u.norm() == 0.0 && sc.mode != Mode::probe) throw ConfigError("initial data is identically zero");
    return u;
}

namespace {

double default_tol(const std::string& name) {
    if (name == "monotone") return 1e-7;
    if (name == "almost_monotone") return 1e-5;
    if (name == "potential_monotone") return 1e-6;
    if (name == "lemma22") return 1e-3;
    if (name == "h_prime_identity") return 5e-2;
    if (name == "h_lower_bound") return 1e-8;
    if (name == "case1_bound") return 0.0;
    return 0.0;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc, int threads) {
    ScenarioResult res;
    res.t0 = compute_T0(sc.growth.A, sc.T);
    const double T0 = res.t0.value;
    const std::vector<double> tau_grid =
        geometric_tau_grid(T0, sc.tau_spec.points, sc.tau_spec.lo_frac, sc.tau_spec.hi_frac);

    const GaussianGrid gamma = GaussianGrid::build_gamma(sc.dim, sc.grid.nodes);

    if (sc.mode == Mode::probe) {
        validate_probe(sc.probe, sc.dim, gamma);
        EnvelopeReport env = vanishing_envelope(sc.probe, tau_grid, sc.dim, sc.grid.nodes);
        res.rows.push_back(env.report);
        res.trace.scenario = sc.name;
        res.trace.dim = sc.dim;
        res.trace.T0 = T0;
        res.trace.A = sc.growth.A;
        res.trace.tau = env.tau;
        res.trace.H = env.G;
        res.trace.I.assign(env.tau.size(), 0.0);
        res.trace.N.assign(env.tau.size(), 0.0);
        res.trace.N_prime.assign(env.tau.size(), 0.0);
        res.trace.flags.assign(env.tau.size(), "probe");
        for (const auto& r : res.rows) res.pass = res.pass && r.pass;
        return res;
    }

    SpectralField u0 = build_initial(sc);

    // sampled preconditions before any run
    if (!check_growth([&u0](const Point& p) { return u0.evaluate(p); }, sc.growth, gamma))
        throw ConfigError("initial data violates its declared growth class");
    const bool potential_mode = sc.mode == Mode::potential_smooth || sc.mode == Mode::potential_singular;
    if (sc.mode == Mode::lower_order) {
        const std::array<double, 3> sample_times{-T0, -T0 / 2, 0.0};
        validate_lower_order(sc.lower, gamma, sample_times);
    }
    if (potential_mode) validate_potential(sc.potential, sc.dim, gamma);

    const double t_start = -T0;
    const LowerOrder* lo = sc.mode == Mode::lower_order ? &sc.lower : nullptr;
    const Potential* pot = potential_mode ? &sc.potential : nullptr;

    TraceRequest req;
    req.dim = sc.dim;
    req.nodes = sc.grid.nodes;
    req.potential = pot;
    req.lower = lo;
    req.scenario = sc.name;
    req.T0 = T0;
    req.A = sc.growth.A;
    req.L = sc.mode == Mode::lower_order ? sc.lower.L : (potential_mode ? sc.potential.L : 0.0);
    req.threads = threads;

    // times the checks will need, so one provider pass serves everything
    const bool wants_duality = std::any_of(sc.checks.begin(), sc.checks.end(),
                                           [](const CheckSpec& c) { return c.name == "duality"; });
    EvolveStats evolve_stats;
    auto make_provider = [&](double dt) {
        EvolutionConfig cfg;
        cfg.dt = dt;
        cfg.degree = sc.grid.degree;
        cfg.nodes = sc.grid.nodes;
        FieldProvider p = (sc.mode == Mode::pure)
                              ? make_pure_provider(u0, t_start)
                              : make_evolved_provider(u0, t_start, cfg, lo, pot, &evolve_stats);
        if (sc.mode != Mode::pure) {
            std::vector<double> warm;
            for (double tau : tau_grid) warm.push_back(-tau);
            if (wants_duality) {
                for (const auto& c : sc.checks)
                    if (c.name == "duality") {
                        const double S = c.S_frac * T0;
                        for (int k = 0; k < 16; ++k) {
                            const double tau = (0.1 + 1.8 * k / 15.0) * S;
                            warm.push_back(tau - 2.0 * S);
                            warm.push_back(-tau);
                        }
                    }
            }
            std::sort(warm.begin(), warm.end());
            for (double t : warm) p(t);
        }
        return p;
    };

    double dt = sc.grid.dt;
    FieldProvider provider = make_provider(dt);
    res.trace = trace_frequency(provider, tau_grid, req);
    if (sc.grid.refine_tol > 0.0 && sc.mode != Mode::pure) {
        for (int level = 0; level < sc.grid.max_refine; ++level) {
            FieldProvider finer = make_provider(dt / 2.0);
            FrequencyTrace t2 = trace_frequency(finer, tau_grid, req);
            double delta = 0.0;
            const std::size_t common = std::min(res.trace.N.size(), t2.N.size());
            for (std::size_t k = 0; k < common; ++k) delta = std::max(delta, std::abs(res.trace.N[k] - t2.N[k]));
            dt /= 2.0;
            provider = std::move(finer);
            res.trace = std::move(t2);
            if (delta <= sc.grid.refine_tol) break;
        }
    }

    if (sc.mode != Mode::pure) {
        // accepted runs must keep the discarded projection energy negligible
        CheckReport tr;
        tr.check = "truncation_energy";
        tr.anchor = "degree cutoff policy";
        tr.lhs = evolve_stats.truncation_energy;
        tr.rhs = 1e-8;
        tr.margin = tr.rhs - tr.lhs;
        tr.pass = tr.lhs < tr.rhs;
        tr.inputs.emplace_back("steps", static_cast<double>(evolve_stats.steps));
        res.rows.push_back(tr);
    }

    for (const auto& cs : sc.checks) {
        const double tol = cs.tol > 0.0 ? cs.tol : default_tol(cs.name);
        if (cs.name == "monotone") {
            res.rows.push_back(check_monotone(res.trace, tol));
        } else if (cs.name == "almost_monotone") {
            res.rows.push_back(check_almost_monotone(res.trace, req.L, sc.dim, tol));
        } else if (cs.name == "reconstruction") {
            res.rows.push_back(check_reconstruction(res.trace));
        } else if (cs.name == "h_prime_identity") {
            res.rows.push_back(check_H_prime_identity(res.trace, tol));
        } else if (cs.name == "lemma22") {
            res.rows.push_back(check_lemma22_bound(res.trace, tol));
        } else if (cs.name == "potential_monotone") {
            res.rows.push_back(check_potential_monotone(res.trace, tol));
        } else if (cs.name == "h_lower_bound") {
            const double tau0 = cs.tau0_frac * T0;
            HBoundReport hb = check_H_lower_bound(res.trace, tau0, cs.C2, tol);
            res.rows.push_back(hb.sharp);
            res.rows.push_back(hb.tau_form);
        } else if (cs.name == "duality") {
            const double S = cs.S_frac * T0;
            std::vector<double> dgrid;
            for (int k = 0; k < 16; ++k) dgrid.push_back((0.1 + 1.8 * k / 15.0) * S);
            DualityResult dr = duality_pairing(provider, S, dgrid, cs.rel_tol, cs.abs_tol);
            res.rows.push_back(dr.report);
        } else if (cs.name == "hardy_quadratic" || cs.name == "hardy_singular") {
            CheckReport worst;
            bool first = true;
            for (double tau : res.trace.tau) {
                const SpectralField u = provider(-tau);
                const GaussianGrid comp = composite_grid(sc.dim, sc.grid.nodes, tau);
                CheckReport r = cs.name == "hardy_quadratic" ? hardy_quadratic(u, tau, comp)
                                                             : hardy_singular(u, tau, comp);
                if (first || r.margin < worst.margin || (!r.pass && worst.pass)) worst = r;
                first = false;
            }
            worst.detail = "worst margin over the tau grid";
            res.rows.push_back(worst);
        } else if (cs.name == "case1_bound") {
            if (sc.mode != Mode::potential_smooth) throw ConfigError("case1_bound applies to smooth radial potentials");
            std::vector<double> r_grid;
            for (int k = 1; k <= 64; ++k) r_grid.push_back(4.0 * k / 64.0);
            Case1Report cr = case1_potential_bound(sc.potential.v, sc.potential.v_prime, r_grid);
            res.rows.push_back(cr.report);
        } else {
            throw ConfigError("unknown check '" + cs.name + "'");
        }
    }

    for (const auto& r : res.rows) res.pass = res.pass && r.pass;
    return res;
}

ScenarioResult run_scenario_to_files(const Scenario& sc, const std::filesystem::path& outdir, int threads) {
    ScenarioResult res = run_scenario(sc, threads);
    std::filesystem::create_directories(outdir);
    write_trace_csv(outdir / (sc.name + ".trace.csv"), res.trace);
    ReportMeta meta;
    meta.scenario = sc.name;
    meta.mode = mode_name(sc.mode);
    meta.dim = sc.dim;
    meta.T0 = res.t0.value;
    meta.A = sc.growth.A;
    meta.L = sc.mode == Mode::lower_order ? sc.lower.L : 0.0;
    write_report_json(outdir / (sc.name + ".report.json"), meta, res.rows);
    return res;
}

}  // namespace oulab
