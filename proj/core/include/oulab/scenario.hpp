#pragma once

#include <filesystem>
#include <optional>

#include "oulab/inequalities.hpp"
#include "oulab/report.hpp"

namespace oulab {

enum class Mode { pure, lower_order, potential_smooth, potential_singular, probe };

std::string mode_name(Mode m);

struct GridSpec {
    int degree = 8;
    int nodes = 32;
    double dt = 1e-4;
    double refine_tol = 0.0;  // > 0: halve dt until max |delta N| <= refine_tol
    int max_refine = 3;
};

struct TauGridSpec {
    int points = 40;
    double lo_frac = 0.01;
    double hi_frac = 0.9;
};

struct CheckSpec {
    std::string name;
    double tol = 0.0;  // 0 means the check's default
    std::optional<double> C2;
    double tau0_frac = 0.5;
    double S_frac = 0.25;
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
};

/// Full experiment description; see README for the JSON schema.
struct Scenario {
    std::string name;
    int dim = 1;
    Mode mode = Mode::pure;
    std::vector<std::pair<double, std::vector<int>>> hermite_terms;   // coeff, multi-index
    std::vector<std::pair<double, std::vector<int>>> monomial_terms;  // coeff, exponents
    LowerOrder lower;
    Potential potential;
    VanishingProbe probe;
    GrowthClass growth{1.0, 1.0};
    double T = 10.0;
    GridSpec grid;
    TauGridSpec tau_spec;
    std::vector<CheckSpec> checks;
};

Scenario parse_scenario_text(const std::string& json_text);
Scenario parse_scenario_file(const std::filesystem::path& path);

struct ScenarioResult {
    FrequencyTrace trace;
    std::vector<CheckReport> rows;
    HorizonT0 t0;
    bool pass = true;
};

/// Validate preconditions, evolve, trace, and run the requested checks.
ScenarioResult run_scenario(const Scenario& sc, int threads = 1);

/// Build the initial SpectralField at the scenario's degree cutoff.
SpectralField build_initial(const Scenario& sc);

/// run + write <outdir>/<name>.trace.csv and <outdir>/<name>.report.json.
ScenarioResult run_scenario_to_files(const Scenario& sc, const std::filesystem::path& outdir, int threads = 1);

}  // namespace oulab
