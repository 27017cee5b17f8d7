#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int run_cli(const std::string& args) {
    const int status = std::system((std::string(OULAB_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string scenario_path(const char* name) { return std::string(OULAB_SCENARIO_DIR) + "/" + name; }

std::filesystem::path fresh_dir(const char* name) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("run subcommand: green scenario exits 0 and writes both outputs") {
    const auto dir = fresh_dir("oulab_cli_run");
    CHECK(run_cli("run " + scenario_path("eigen1.json") + " --outdir " + dir.string()) == 0);
    CHECK(std::filesystem::exists(dir / "eigen1.trace.csv"));
    CHECK(std::filesystem::exists(dir / "eigen1.report.json"));
}

TEST_CASE("run subcommand: malformed config exits 1 with a message naming the field") {
    const auto dir = fresh_dir("oulab_cli_bad");
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << R"({"name":"bad","mode":"pure",
        "initial":[{"coeff":1.0,"hermite":[1]}],"checks":[]})";
    const std::string cmd = std::string(OULAB_CLI_PATH) + " run " + bad.string() + " --outdir " + dir.string() +
                            " 2> " + (dir / "err.txt").string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    std::ifstream err(dir / "err.txt");
    std::string msg((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    CHECK(msg.find("dim") != std::string::npos);

    CHECK(run_cli("run " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("suite subcommand: hbound battery passes, unknown name exits 1") {
    const auto dir = fresh_dir("oulab_cli_suite");
    CHECK(run_cli("suite hbound --outdir " + dir.string()) == 0);
    CHECK(std::filesystem::exists(dir / "suite_hbound.report.json"));
    CHECK(run_cli("suite bogus --outdir " + dir.string()) == 1);
}

TEST_CASE("suite subcommand: sign-flipped Hardy hook exits 2") {
    const auto dir = fresh_dir("oulab_cli_flip");
    const std::string cmd = "OULAB_HARDY_FLIP=1 " + std::string(OULAB_CLI_PATH) + " suite hardy --outdir " +
                            dir.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("t0 subcommand prints the horizon") {
    const auto dir = fresh_dir("oulab_cli_t0");
    const std::string out = (dir / "t0.txt").string();
    const int status = std::system((std::string(OULAB_CLI_PATH) + " t0 --A 1 --T 10 > " + out).c_str());
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream f(out);
    double value = 0;
    f >> value;
    CHECK(value == doctest::Approx(0.014868).epsilon(1e-4));
}
