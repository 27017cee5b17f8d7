#include "doctest.h"

#include <cmath>
#include <fstream>

#include "oulab/scenario.hpp"
#include "test_oracles.hpp"

using namespace oulab;

namespace {
std::string scenario_path(const char* name) { return std::string(OULAB_SCENARIO_DIR) + "/" + name; }
}  // namespace

TEST_CASE("bundled eigen1: monotone pass, N within 1e-8 of 1") {
    const Scenario sc = parse_scenario_file(scenario_path("eigen1.json"));
    CHECK(sc.mode == Mode::pure);
    const ScenarioResult res = run_scenario(sc);
    CHECK(res.pass);
    for (double nv : res.trace.N) CHECK(std::abs(nv - 1.0) < 1e-8);
    bool saw_monotone = false;
    for (const auto& r : res.rows) {
        if (r.check == "monotone") {
            saw_monotone = true;
            CHECK(r.pass);
            CHECK(r.anchor == "Theorem 1.2");
        }
        CHECK_FALSE(r.anchor.empty());  // every row carries its anchor
    }
    CHECK(saw_monotone);
}

TEST_CASE("bundled eigen2 builds He_2 from monomial terms") {
    const Scenario sc = parse_scenario_file(scenario_path("eigen2.json"));
    SpectralField u0 = build_initial(sc);
    const std::array<int, 1> i0{0}, i2{2};
    CHECK(u0.coeff(i2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));  // x^2 - 1 = He_2
    CHECK(std::abs(u0.coeff(i0)) < 1e-13);
    const ScenarioResult res = run_scenario(sc);
    CHECK(res.pass);
}

TEST_CASE("bundled drift-bounded: almost-monotone with C = 0.5") {
    const Scenario sc = parse_scenario_file(scenario_path("drift-bounded.json"));
    CHECK(sc.lower.L == 0.5);
    const ScenarioResult res = run_scenario(sc);
    CHECK(res.pass);
    for (const auto& r : res.rows)
        if (r.check == "almost_monotone")
            for (const auto& [k, v] : r.inputs)
                if (k == "C") CHECK(v == doctest::Approx(2.0 * 0.25).epsilon(1e-15));
}

TEST_CASE("bundled linear-c validates the coefficient bounds themselves") {
    const Scenario sc = parse_scenario_file(scenario_path("linear-c.json"));
    const GaussianGrid gamma = GaussianGrid::build_gamma(sc.dim, sc.grid.nodes);
    const std::array<double, 2> times{-0.01, 0.0};
    CHECK_NOTHROW(validate_lower_order(sc.lower, gamma, times));
    const ScenarioResult res = run_scenario(sc);
    CHECK(res.pass);
}

TEST_CASE("bundled probe scenario runs the envelope") {
    const Scenario sc = parse_scenario_file(scenario_path("probe-k1.json"));
    const ScenarioResult res = run_scenario(sc);
    CHECK(res.pass);
    CHECK(res.trace.flags[0] == "probe");
}

TEST_CASE("malformed configs name the offending field") {
    CHECK_THROWS_WITH_AS(parse_scenario_text(R"({"name":"x","mode":"pure"})"),
                         doctest::Contains("dim"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_text(R"({"dim":1,"mode":"pure"})"),
                         doctest::Contains("name"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_text("not json at all"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_text(R"({"name":"x","dim":1,"mode":"warp"})"),
                         doctest::Contains("mode"), ConfigError);
}

TEST_CASE("initial data violating its growth class is rejected") {
    Scenario sc = parse_scenario_file(scenario_path("eigen1.json"));
    sc.growth.B = 1e-9;  // He_1 exceeds 1e-9 e^{x^2} at the nodes
    CHECK_THROWS_AS(run_scenario(sc), ConfigError);
}

TEST_CASE("scenario outputs are deterministic and atomic") {
    const Scenario sc = parse_scenario_file(scenario_path("eigen1.json"));
    const std::filesystem::path dir1 = std::filesystem::temp_directory_path() / "oulab_det_1";
    const std::filesystem::path dir2 = std::filesystem::temp_directory_path() / "oulab_det_2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    run_scenario_to_files(sc, dir1);
    run_scenario_to_files(sc, dir2);
    for (const char* f : {"eigen1.trace.csv", "eigen1.report.json"}) {
        std::ifstream a(dir1 / f), b(dir2 / f);
        REQUIRE(a.good());
        REQUIRE(b.good());
        std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
        CHECK_FALSE(sa.empty());
    }
    // no stray temp files
    for (const auto& e : std::filesystem::directory_iterator(dir1))
        CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("trace CSV has the fixed column order and full-precision values") {
    const Scenario sc = parse_scenario_file(scenario_path("eigen1.json"));
    const ScenarioResult res = run_scenario(sc);
    const std::string csv = trace_csv_string(res.trace);
    CHECK(csv.rfind("tau,H,I,N,N_prime,flags\n", 0) == 0);
    // first data line round-trips to the stored tau
    const std::size_t nl = csv.find('\n');
    const std::size_t comma = csv.find(',', nl + 1);
    const double tau0 = std::stod(csv.substr(nl + 1, comma - nl - 1));
    CHECK(tau0 == res.trace.tau[0]);
}

TEST_CASE("threaded traces are bit-identical to serial ones") {
    const Scenario sc = parse_scenario_file(scenario_path("eigen1.json"));
    const ScenarioResult serial = run_scenario(sc, 1);
    const ScenarioResult threaded = run_scenario(sc, 2);
    REQUIRE(serial.trace.N.size() == threaded.trace.N.size());
    for (std::size_t k = 0; k < serial.trace.N.size(); ++k) {
        CHECK(serial.trace.N[k] == threaded.trace.N[k]);
        CHECK(serial.trace.H[k] == threaded.trace.H[k]);
    }
}

TEST_CASE("potential-q2 scenario parses and validates") {
    const Scenario sc = parse_scenario_file(scenario_path("potential-q2.json"));
    CHECK(sc.mode == Mode::potential_singular);
    CHECK(sc.potential.q == 2.0);
    const GaussianGrid gamma = GaussianGrid::build_gamma(3, sc.grid.nodes);
    CHECK_NOTHROW(validate_potential(sc.potential, 3, gamma));
    // sign-changing w is accepted at q = 2
    Point th{1.0, 0.0, 0.0};
    th.dim = 3;
    CHECK(sc.potential.w(th) == doctest::Approx(1.0));
    Point th2{0.0, 1.0, 0.0};
    th2.dim = 3;
    CHECK(sc.potential.w(th2) == doctest::Approx(-1.0));
}
