#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "carl/io.hpp"
#include "helpers.hpp"

using testutil::from_rows;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "carldae-cli-tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
    fs::path out = work_dir() / (tag + ".out");
    std::string cmd = std::string(CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      (work_dir() / (tag + ".err")).string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    if (fs::exists(out)) r.stdout_text = carl::read_file(out.string());
    return r;
}

} // namespace

TEST_CASE("reduce emits the reference matrix as parseable CSV") {
    RunResult r = run_cli("reduce --fixture test1 --order 2", "reduce1");
    REQUIRE(r.exit_code == 0);
    carl::Matrix m = carl::matrix_from_csv(r.stdout_text);
    carl::Matrix expect = from_rows({{-1.9, -0.6, 0.2, 0.0, 0.0, 0.0},
                                     {-2.1, -2.1, 0.3, 0.05, 0.05, -0.15},
                                     {0.0, 0.0, -3.8, -0.5, -0.7, 0.0},
                                     {0.0, 0.0, -2.1, -4.1, 0.1, -0.6},
                                     {0.0, 0.0, -2.1, 0.1, -4.1, -0.6},
                                     {0.0, 0.0, 0.0, -2.2, -2.0, -4.2}});
    CHECK(testutil::max_abs_diff(m, expect) <= 1e-12);
}

TEST_CASE("runs are deterministic byte for byte") {
    RunResult a = run_cli("reduce --fixture test2 --order 3", "det-a");
    RunResult b = run_cli("reduce --fixture test2 --order 3", "det-b");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(!a.stdout_text.empty());
    CHECK(a.stdout_text == b.stdout_text);

    RunResult s1 = run_cli("simulate --fixture test3 --order 2 --T 1 --dt 0.01", "sim-a");
    RunResult s2 = run_cli("simulate --fixture test3 --order 2 --T 1 --dt 0.01", "sim-b");
    REQUIRE(s1.exit_code == 0);
    CHECK(s1.stdout_text == s2.stdout_text);
}

TEST_CASE("validate reports near-zero model error for the bundled DAE/ODE pair") {
    RunResult r = run_cli("validate --fixture test2 --order 2", "validate2");
    REQUIRE(r.exit_code == 0);
    std::size_t pos = r.stdout_text.find("\"error_percent\":");
    REQUIRE(pos != std::string::npos);
    double err = std::stod(r.stdout_text.substr(pos + 16));
    CHECK(err <= 1e-10);
}

TEST_CASE("reduce --out writes the matrix and diagnostics files") {
    fs::path dir = work_dir() / "reduce-out";
    RunResult r = run_cli("reduce --fixture test1 --order 2 --out " + dir.string(), "reduce-out");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(dir / "Ftilde11.csv"));
    CHECK(fs::exists(dir / "Htilde_1_1.csv"));
    CHECK(fs::exists(dir / "Htilde_1_2.csv"));
    CHECK(fs::exists(dir / "diagnostics.json"));
    carl::Matrix ht1 = carl::matrix_from_csv(carl::read_file((dir / "Htilde_1_1.csv").string()));
    CHECK(testutil::max_abs_diff(ht1, from_rows({{1.0, -1.0}})) <= 1e-12);
}

TEST_CASE("exit codes distinguish usage errors from model errors") {
    CHECK(run_cli("check --fixture test1", "ok").exit_code == 0);
    CHECK(run_cli("check --fixture no-such-model", "badfix").exit_code == 1);
    CHECK(run_cli("reduce --fixture test1 --order 5", "badorder").exit_code == 2);
    CHECK(run_cli("reduce --order 2", "nomodel").exit_code == 2);
    CHECK(run_cli("frobnicate", "badsub").exit_code == 2);

    fs::path bad = work_dir() / "malformed.json";
    carl::write_file(bad.string(), "{\"states\": [\"x\"], \"odes\": [\"x +\"]");
    CHECK(run_cli("check --model " + bad.string(), "badmodel").exit_code == 1);
}
