#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"

#ifdef LONGWAVE_CLI_PATH

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LONGWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string smoke_config() {
    const fs::path p = fs::path(LONGWAVE_CONFIG_DIR) / "solve_ch_smoke.json";
    return p.string();
}

std::string out_arg(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("longwave_cli_" + tag);
    fs::remove_all(dir);
    return "-o " + dir.string();
}

} // namespace

// Exit codes are a stable contract: 0 ok, 1 config, 2 blow-up, 3 partial.
TEST_CASE("cli exit codes") {
    CHECK(run_cli("solve --config " + smoke_config() + " " + out_arg("ok") +
                  " --set t_end=0.2") == 0);
    CHECK(run_cli("solve --config " + smoke_config() + " " + out_arg("eps") +
                  " --set epsilon=0.3 --set delta=0.1") == 1);
    CHECK(run_cli("solve --config /nope/missing.json") == 1);
    CHECK(run_cli("solve --config " + smoke_config() + " " + out_arg("blow") +
                  " --set blow_up_threshold=0.5 --set t_end=0.2") == 2);
    // every sweep point trips the blow-up monitor -> partial failure
    CHECK(run_cli("sweep --config " + smoke_config() + " " + out_arg("partial") +
                  " --set target=\\\"ib\\\" --set 'path=[[0.1,0.1],[0.05,0.05]]'"
                  " --set t_cap=0.5 --set sample_dt=0.1 --set 't_star=[0.1]'"
                  " --set blow_up_threshold=0.5") == 3);
}

TEST_CASE("cli solve --target exports u and ut snapshots") {
    const fs::path dir = fs::temp_directory_path() / "longwave_cli_target";
    fs::remove_all(dir);
    CHECK(run_cli("solve --target --config " + smoke_config() + " -o " + dir.string() +
                  " --set target=\\\"ib\\\" --set t_end=0.2") == 0);
    CHECK(fs::exists(dir / "trajectory" / "manifest.json"));
    CHECK(fs::exists(dir / "trajectory" / "u_0000.csv"));
    CHECK(fs::exists(dir / "trajectory" / "ut_0000.csv"));
}

#endif
