// oulab: scenario-driven laboratory for the Gaussian-space parabolic frequency.
//
//   oulab run <config.json> [--outdir DIR] [--threads N]
//   oulab suite <identities|monotonicity|hardy|vanishing|all> [--outdir DIR] [--threads N]
//   oulab t0 --A <a> --T <t>
//
// Exit codes: 0 all requested checks pass, 2 a check failed, 1 configuration
// or evaluation error. OULAB_SEED fixes the randomized-suite seed (default 42).

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "oulab/suite.hpp"

namespace {

std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("OULAB_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
            throw oulab::ConfigError("OULAB_SEED must be an unsigned integer");
        }
    }
    return 42;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ornstein-Uhlenbeck parabolic frequency laboratory"};
    app.require_subcommand(1);

    std::string config_path, suite_name, outdir = ".";
    int threads = 1;
    double t0_A = 0.0, t0_T = 0.0;

    CLI::App* run = app.add_subcommand("run", "run one scenario config, write trace CSV and report JSON");
    run->add_option("config", config_path, "scenario JSON file")->required();
    run->add_option("--outdir", outdir, "output directory (default .)");
    run->add_option("--threads", threads, "worker threads for trace points");

    CLI::App* suite = app.add_subcommand("suite", "run a named acceptance battery");
    suite->add_option("name", suite_name, "identities | monotonicity | hardy | vanishing | all")->required();
    suite->add_option("--outdir", outdir, "output directory (default .)");
    suite->add_option("--threads", threads, "worker threads");

    CLI::App* t0 = app.add_subcommand("t0", "print the horizon T0 for growth constant A and horizon T");
    t0->add_option("--A", t0_A, "growth constant A > 0")->required();
    t0->add_option("--T", t0_T, "horizon T > 0")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const oulab::Scenario sc = oulab::parse_scenario_file(config_path);
            const oulab::ScenarioResult res = oulab::run_scenario_to_files(sc, outdir, threads);
            for (const auto& r : res.rows)
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << sc.name << "/" << r.check << "  ("
                          << r.anchor << ")\n";
            return res.pass ? 0 : 2;
        }
        if (suite->parsed()) {
            oulab::SuiteOptions opt;
            opt.outdir = outdir;
            opt.seed = seed_from_env();
            opt.threads = threads;
            opt.flip_hardy_rhs = std::getenv("OULAB_HARDY_FLIP") != nullptr;
            return oulab::run_suite(suite_name, opt, std::cout);
        }
        if (t0->parsed()) {
            std::cout << oulab::format_double(oulab::compute_T0(t0_A, t0_T).value) << "\n";
            return 0;
        }
    } catch (const oulab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
