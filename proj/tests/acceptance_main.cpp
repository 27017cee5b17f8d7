// Acceptance suite: one line per criterion, nonzero exit on any failure.
// OULAB_SEED selects the randomized-suite seed (default 42).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "oulab/suite.hpp"

using namespace oulab;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool pass;
    std::string detail;
};

bool rows_pass(const std::vector<CheckReport>& rows, std::string& detail) {
    bool ok = true;
    std::string worst;
    for (const auto& r : rows) {
        if (!r.pass && worst.empty()) worst = r.check;
        ok = ok && r.pass;
    }
    if (!ok) detail = "first failing check: " + worst;
    return ok;
}

std::map<std::string, std::string> read_dir_bytes(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream f(e.path(), std::ios::binary);
        out[std::filesystem::relative(e.path(), dir).string()] =
            std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    }
    return out;
}

}  // namespace

int main() {
    SuiteOptions opt;
    opt.seed = 42;
    if (const char* s = std::getenv("OULAB_SEED")) opt.seed = std::strtoull(s, nullptr, 10);
    const std::filesystem::path base = std::filesystem::temp_directory_path() / "oulab_acceptance";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);
    opt.outdir = base / "rows";
    std::filesystem::create_directories(opt.outdir);

    std::vector<Criterion> results;
    try {
        {
            Criterion c{1, "kernel identities: mass, matrix equality, O(h^2) backward-equation residual", true, ""};
            c.pass = rows_pass(battery_identities(opt), c.detail);
            results.push_back(c);
        }
        {
            const std::vector<CheckReport> rows = battery_monotonicity(opt);
            std::vector<CheckReport> eigen, pure, drift;
            for (const auto& r : rows) {
                if (r.check.rfind("eigen", 0) == 0) eigen.push_back(r);
                else if (r.check == "monotone_random_pure" || r.check == "reconstruction") pure.push_back(r);
                else drift.push_back(r);
            }
            Criterion c2{2, "eigen-calibration: N = 1 (1e-8) and the closed-form N (1e-7)", true, ""};
            c2.pass = rows_pass(eigen, c2.detail);
            results.push_back(c2);
            Criterion c3{3, "monotonicity: 100 random polynomial data, pure flow, tol 1e-7", true, ""};
            c3.pass = rows_pass(pure, c3.detail);
            results.push_back(c3);
            Criterion c4{4, "almost-monotonicity: 25 drift scenarios, constant (n+1) L^2", true, ""};
            c4.pass = rows_pass(drift, c4.detail);
            results.push_back(c4);
        }
        {
            Criterion c{5, "Hardy suite: both bounds on 100 random fields per dimension + proof identity (1e-8)",
                        true, ""};
            c.pass = rows_pass(battery_hardy(opt), c.detail);
            results.push_back(c);
        }
        {
            Criterion c{6, "vanishing envelope: slope within 0.1 of 2K, C1 tau^{2K} bound, C_{n,K} (1e-10)", true, ""};
            c.pass = rows_pass(battery_vanishing(opt), c.detail);
            results.push_back(c);
        }
        {
            Criterion c{7, "duality conservation: 1e-6 relative after refinement, e^{2S} case at 1e-8", true, ""};
            c.pass = rows_pass(battery_duality(opt), c.detail);
            results.push_back(c);
        }
        {
            Criterion c{8, "potential monotonicity at q=2 (n=3): N' >= -1e-6 pointwise, three w", true, ""};
            c.pass = rows_pass(battery_potential(opt), c.detail);
            results.push_back(c);
        }
        {
            Criterion c{9, "H lower-bound mechanism: tau^{2K} vs tau^{C2}, fails exactly when 2K > C2", true, ""};
            c.pass = rows_pass(battery_hbound(opt), c.detail);
            results.push_back(c);
        }
        {
            Criterion c{10, "determinism: suite(all) twice is byte-identical", true, ""};
            SuiteOptions o1 = opt, o2 = opt;
            o1.outdir = base / "det1";
            o2.outdir = base / "det2";
            std::filesystem::create_directories(o1.outdir);
            std::filesystem::create_directories(o2.outdir);
            std::ostringstream log1, log2;
            const int r1 = run_suite("all", o1, log1);
            const int r2 = run_suite("all", o2, log2);
            const auto b1 = read_dir_bytes(o1.outdir);
            const auto b2 = read_dir_bytes(o2.outdir);
            c.pass = (r1 == 0) && (r2 == 0) && (log1.str() == log2.str()) && (b1 == b2) && !b1.empty();
            if (!c.pass) c.detail = "outputs differ or a battery failed";
            results.push_back(c);
        }
    } catch (const std::exception& e) {
        std::cerr << "acceptance aborted: " << e.what() << "\n";
        return 1;
    }

    bool all = true;
    for (const auto& c : results) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.title;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
        all = all && c.pass;
    }
    std::cout << (all ? "acceptance: ALL CRITERIA PASS\n" : "acceptance: FAILURES PRESENT\n");
    return all ? 0 : 2;
}
