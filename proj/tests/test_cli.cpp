#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "lw/json_io.hpp"

namespace fs = std::filesystem;
using lw::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    json j;
};

CliRun lw_run(const std::string& args) {
    std::string cmd = std::string(LW_BINARY) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.j = json::parse(r.out, nullptr, false);
    return r;
}

std::string data(const std::string& name) { return std::string(LW_DATA_DIR) + "/" + name + ".json"; }

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("lw_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Cli, IhCube) {
    CliRun r = lw_run("ih --in " + data("cube"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.j["command"], "ih");
    EXPECT_EQ(r.j["status"], "PASS");
    EXPECT_EQ(r.j["result"]["betti"], json::parse("[1,0,3,0,3,0,1]"));
    EXPECT_EQ(r.j["result"]["signatures"]["1"], json::parse("[1,2,0]"));
    EXPECT_EQ(r.j["result"]["signatures"]["3"], json::parse("[1,0,0]"));
}

TEST(Cli, HvectorSimplex) {
    CliRun r = lw_run("hvector --in " + data("simplex4"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.j["result"]["hvector"]["h"], json::parse("[1,1,1,1,1]"));
}

TEST(Cli, FacesOfSeveralInputs) {
    CliRun r = lw_run("faces --in " + data("segment") + " --in " + data("triangle"));
    ASSERT_EQ(r.code, 0);
    ASSERT_TRUE(r.j["result"].is_array());
    EXPECT_EQ(r.j["result"].size(), 2u);
    EXPECT_EQ(r.j["result"][1]["polytope_id"], "triangle");
}

TEST(Cli, Defect) {
    CliRun r = lw_run("defect --in " + data("square_pyramid"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.j["result"]["stout"]["defect"], 1);
    EXPECT_EQ(r.j["result"]["stout"]["minimal"]["vertices"], json::parse("[4]"));
}

TEST(Cli, PipelineSquarePyramid) {
    CliRun r = lw_run("verify-pipeline --in " + data("square_pyramid"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.j["result"]["verdict"], "PASS");
    EXPECT_EQ(r.j["result"]["mu"], 1);
}

TEST(Cli, DeformCubeEdge) {
    CliRun r = lw_run("deform --in " + data("cube") + " --face 9 --t-samples 0,1/3,1");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.j["status"], "PASS");
}

TEST(Cli, OutputDirectory) {
    fs::path dir = scratch("out");
    CliRun r = lw_run("verify-pipeline --in " + data("square_pyramid") + " --out " + dir.string() + " --seed 7");
    ASSERT_EQ(r.code, 0);
    for (const char* f : {"summary.json", "stages.jsonl", "report.txt", "config.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    std::ifstream s(dir / "summary.json");
    json summary = json::parse(s);
    EXPECT_EQ(summary["seed"], 7);
    std::ifstream st(dir / "stages.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(st, line)) {
        json j = json::parse(line);
        EXPECT_TRUE(j.contains("stage"));
        ++lines;
    }
    EXPECT_GT(lines, 3);
    std::ifstream c(dir / "config.json");
    EXPECT_EQ(json::parse(c)["seed"], 7);
    fs::remove_all(dir);
}

TEST(Cli, ConfigFile) {
    fs::path dir = scratch("cfg");
    fs::create_directories(dir);
    {
        std::ofstream c(dir / "config.json");
        c << R"({"max_dim": 2})";
    }
    CliRun r = lw_run("ih --in " + data("cube") + " --config " + (dir / "config.json").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.j["error"]["kind"], "precondition");
    {
        std::ofstream c(dir / "config.json");
        c << R"({"max_dimension": 2})";
    }
    r = lw_run("ih --in " + data("cube") + " --config " + (dir / "config.json").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.j["error"]["kind"], "invalid-input");
    fs::remove_all(dir);
}

TEST(Cli, Errors) {
    CliRun r = lw_run("ih --in /nonexistent/file.json");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.j["error"]["kind"], "invalid-input");
    r = lw_run("");
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.j.contains("error"));
    r = lw_run("ih --bogus");
    EXPECT_EQ(r.code, 2);
    r = lw_run("deform --in " + data("octahedron") + " --face 8");
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, Deterministic) {
    CliRun a = lw_run("verify-pipeline --in " + data("octahedron"));
    CliRun b = lw_run("verify-pipeline --in " + data("octahedron"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}
