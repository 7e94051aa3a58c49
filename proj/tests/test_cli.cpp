#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path workdir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "fraclab_cli_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& sub, const std::string& config_text, const std::string& tag) {
    const fs::path cfg = workdir() / (tag + ".json");
    std::ofstream(cfg) << config_text;
    const fs::path out = workdir() / ("out_" + tag);
    const fs::path err = workdir() / (tag + ".err");
    const std::string cmd = std::string(FRACLAB_CLI_PATH) + " " + sub + " --config " + cfg.string() + " --out " +
                            out.string() + " 2>" + err.string();
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    while (std::size_t k = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), k);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST(Cli, ConstantsReportCriticalExponent) {
    const auto r = run("constants", R"({"geometry": {"kind": "radial", "N": 3}, "params": {"s": 0.75}, "grid": {"n": 16}})",
                       "constants");
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(doc["result"]["two_star_s"].get<double>(), 4.0);
    EXPECT_TRUE(fs::exists(workdir() / "out_constants" / "constants.json"));
}

TEST(Cli, MalformedConfigNamesConstraint) {
    const auto r = run("torsion", R"({"params": {"s": 1.2}, "grid": {"n": 64}})", "bad_s");
    EXPECT_NE(r.status, 0);
    const auto err = nlohmann::json::parse(r.err);
    EXPECT_EQ(err["constraint"], "s in (0,1)");
    EXPECT_NE(r.err.find("s in (0,1)"), std::string::npos);
}

TEST(Cli, InvalidJsonRejected) {
    const auto r = run("torsion", "{not json", "bad_json");
    EXPECT_NE(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "config");
}

TEST(Cli, MissingParameterRejected) {
    const auto r = run("sublinear", R"({"params": {"s": 0.5}, "grid": {"n": 64}})", "missing_q");
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("params.q"), std::string::npos);
}

TEST(Cli, CriticalScaling) {
    const auto r = run("critical",
                       R"({"geometry": {"kind": "radial", "N": 3, "R": [1.0, 0.5]}, "params": {"s": 0.75}, "grid": {"n": 127}})",
                       "critical");
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_LE(doc["result"]["scaling_error"].get<double>(), 0.03);
}

TEST(Cli, DeterministicArtifacts) {
    const std::string cfg =
        R"({"geometry": {"kind": "interval", "R": 1.0}, "params": {"s": 0.4}, "grid": {"refinement": [64, 128]}})";
    const auto a = run("torsion", cfg, "det_a");
    const auto b = run("torsion", cfg, "det_b");
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(workdir() / "out_det_a" / "torsion.json"), slurp(workdir() / "out_det_b" / "torsion.json"));
    EXPECT_EQ(slurp(workdir() / "out_det_a" / "torsion_n128.csv"), slurp(workdir() / "out_det_b" / "torsion_n128.csv"));
}

TEST(Cli, Subcommands) {
    const std::string interval = R"({"params": {"s": 0.6, "q": 0.5, "sigma": 1, "alpha": 0.5, "beta": 0.3, "betas": [0.3]},
                                     "grid": {"n": 128}, "schedule": [1, 10, 100]})";
    for (const char* sub : {"torsion", "auxiliary", "eigen", "hardy", "sublinear", "contrast", "singular"}) {
        const auto r = run(sub, interval, std::string("sub_") + sub);
        EXPECT_EQ(r.status, 0) << sub << ": " << r.err;
        const auto doc = nlohmann::json::parse(r.out);
        EXPECT_EQ(doc["subcommand"], sub);
        EXPECT_TRUE(doc["checks_passed"].get<bool>()) << sub;
    }
    const auto r = run("superlinear",
                       R"({"geometry": {"kind": "radial", "N": 3}, "params": {"s": 0.75, "q": 2}, "grid": {"n": 63},
                           "schedule": [1, 10]})",
                       "sub_superlinear");
    EXPECT_EQ(r.status, 0) << r.err;
    const auto h = run("hardy",
                       R"({"geometry": {"kind": "radial", "N": 3}, "params": {"s": 0.75, "weight": "potential"},
                           "grid": {"refinement": [32, 64, 128]}})",
                       "sub_hardy_potential");
    EXPECT_EQ(h.status, 0) << h.err;
}
