#pragma once

#include <iosfwd>

#include "oulab/scenario.hpp"

namespace oulab {

struct SuiteOptions {
    std::filesystem::path outdir = ".";
    std::uint64_t seed = 42;
    int threads = 1;
    bool flip_hardy_rhs = false;  // test hook: sign-flip the Hardy RHS so the battery fails
};

/// Check batteries, one per verification theme. Each returns its report rows.
std::vector<CheckReport> battery_identities(const SuiteOptions& opt);
std::vector<CheckReport> battery_monotonicity(const SuiteOptions& opt);
std::vector<CheckReport> battery_hardy(const SuiteOptions& opt);
std::vector<CheckReport> battery_vanishing(const SuiteOptions& opt);
std::vector<CheckReport> battery_duality(const SuiteOptions& opt);
std::vector<CheckReport> battery_potential(const SuiteOptions& opt);
std::vector<CheckReport> battery_hbound(const SuiteOptions& opt);

/// Run the named battery set ("identities", "monotonicity", "hardy",
/// "vanishing", or "all"), print one line per check, and write
/// suite_<battery>.report.json files under opt.outdir.
/// Returns 0 when every check passes, 2 otherwise.
int run_suite(const std::string& which, const SuiteOptions& opt, std::ostream& out);

}  // namespace oulab
