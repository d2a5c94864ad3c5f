// End-to-end checks of the command-line surface: exit codes, output files,
// and byte-level determinism of the JSON payloads.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    std::string cmd = std::string(WALKLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

void shell(const std::string& cmd) {
    REQUIRE(std::system(cmd.c_str()) == 0);
}

} // namespace

TEST_CASE("inspect exit codes") {
    CHECK(run("inspect group --spec '{\"family\":\"dihedral\",\"n\":4}'") == 0);
    CHECK(run("inspect reps --spec '{\"family\":\"cyclic\",\"n\":5}'") == 0);
    CHECK(run("inspect group --spec '{\"family\":\"nope\",\"n\":2}'") == 2);
    CHECK(run("inspect group") == 2);  // neither --spec nor --config
}

TEST_CASE("bias command produces deterministic outputs") {
    write("/tmp/walklab_bias_cfg.json", R"({
        "group": {"family": "cyclic", "n": 2},
        "graph": {"kind": "complete_power", "r": 2},
        "n": 16,
        "seed": 9,
        "samples": 500,
        "functions": [
            {"kind": "threshold", "A": [1], "t": 7},
            {"kind": "group_product", "k": 2, "target": 0}
        ]
    })");
    shell("rm -rf /tmp/wl_out1 /tmp/wl_out2 /tmp/wl_out3");
    REQUIRE(run("bias --config /tmp/walklab_bias_cfg.json --out /tmp/wl_out1") == 0);
    REQUIRE(run("bias --config /tmp/walklab_bias_cfg.json --out /tmp/wl_out2") == 0);
    auto a = slurp("/tmp/wl_out1/bias.json");
    CHECK(a == slurp("/tmp/wl_out2/bias.json"));
    CHECK(a.find("\"exact\": true") != std::string::npos);
    CHECK(a.find("\"exact\": false") != std::string::npos);  // sampled record present
    CHECK(a.find("\"seed\": 9") != std::string::npos);
    CHECK(slurp("/tmp/wl_out1/results.csv").rfind("function_tag,n,mode", 0) == 0);

    // --exact-only drops the sampled record
    shell("mkdir -p /tmp/wl_out3");
    REQUIRE(run("bias --config /tmp/walklab_bias_cfg.json --exact-only --out /tmp/wl_out3") == 0);
    CHECK(slurp("/tmp/wl_out3/bias.json").find("\"exact\": false") == std::string::npos);
}

TEST_CASE("verify command: selection, exit codes, reports") {
    shell("mkdir -p /tmp/wl_verify");
    CHECK(run("verify --quick --claims T7,T8 --seed 3 --out /tmp/wl_verify") == 0);
    auto report = slurp("/tmp/wl_verify/report.json");
    CHECK(report.find("\"T7\"") != std::string::npos);
    CHECK(report.find("\"T8\"") != std::string::npos);
    CHECK(report.find("\"T1\"") == std::string::npos);
    CHECK(report.find("config_digest") != std::string::npos);
    CHECK(slurp("/tmp/wl_verify/report_meta.json").find("runtime") != std::string::npos);

    CHECK(run("verify --claims T99") == 2);
}

TEST_CASE("sweep command") {
    shell("mkdir -p /tmp/wl_sweep");
    write("/tmp/walklab_sweep_cfg.json",
          R"({"group": {"family": "cyclic", "n": 2}, "r_min": 2, "r_max": 3, "n": 16})");
    CHECK(run("sweep --claim T16 --config /tmp/walklab_sweep_cfg.json --out /tmp/wl_sweep") == 0);
    CHECK(slurp("/tmp/wl_sweep/sweep.csv").rfind("lambda,n,k,bias", 0) == 0);
    CHECK(run("sweep --claim T3") == 2);  // unsupported sweep claim
}
