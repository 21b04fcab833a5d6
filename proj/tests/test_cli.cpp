#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(HARDCORE_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

json run_json(const std::string& args, int want_code = 0) {
    const auto r = run(args);
    EXPECT_EQ(r.code, want_code) << args << "\n" << r.out;
    return json::parse(r.out);
}

}  // namespace

TEST(Cli, ClassifyTriangular) {
    const auto j = run_json("classify --lattice a2 --d2 13");
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["results"]["case"], "TA2");
    EXPECT_EQ(j["results"]["pgs_count"], 26);
    EXPECT_EQ(j["results"]["density"]["coeff_num"], 1);
    EXPECT_EQ(j["results"]["density"]["coeff_den"], 2);
    EXPECT_EQ(j["results"]["density"]["radical"], 3);
    EXPECT_EQ(j["results"]["density"]["decimal"], "0.906899682117");
    EXPECT_TRUE(j["provenance"].contains("pgs_count"));
}

TEST(Cli, NotAttainable) {
    const auto j = run_json("classify --lattice z2 --d2 3", 2);
    EXPECT_NE(j["error"]["message"].get<std::string>().find("not attainable"), std::string::npos);
    EXPECT_EQ(j["error"]["kind"], "domain");
}

TEST(Cli, MTriangles) {
    const auto j = run_json("mtriangles --d2 65");
    EXPECT_EQ(j["results"]["S"], 60);
    EXPECT_EQ(j["results"]["K"], 2);
    EXPECT_EQ(j["results"]["N1"], 2);
}

TEST(Cli, UnknownFlag) { EXPECT_EQ(run("classify --lattice a2 --d2 13 --bogus").code, 64); }

TEST(Cli, MissingSubcommand) { EXPECT_EQ(run("").code, 64); }

TEST(Cli, BudgetExceeded) {
    const auto j = run_json("oracle --lattice z2 --d2 5 --torus '40,0;0,40' --budget 100", 3);
    EXPECT_EQ(j["error"]["kind"], "budget");
}

TEST(Cli, SlidingCatalogIsDomainError) {
    run_json("pgs --lattice z2 --d2 9", 2);
    const auto j = run_json("classify --lattice z2 --d2 9");
    EXPECT_TRUE(j["results"]["sliding"].get<bool>());
}

TEST(Cli, SlidingWitness) {
    const auto j = run_json("sliding --lattice z2 --d2 4");
    EXPECT_FALSE(j["results"]["witness"].is_null());
}

TEST(Cli, OracleAndGibbs) {
    const auto o = run_json("oracle --lattice z2 --d2 2 --torus '4,0;0,4' --all");
    EXPECT_EQ(o["results"]["max_count"], 8);
    EXPECT_EQ(o["results"]["optimizer_count"], 2);
    const auto g = run_json("gibbs-exact --lattice z2 --d2 2 --torus '2,0;0,2' --u 1/2");
    EXPECT_EQ(g["results"]["polynomial"], "1 + 4u + 2u^2");
    EXPECT_EQ(g["results"]["Z"], "7/2");
    run_json("gibbs-exact --lattice z2 --d2 2", 2);
}

TEST(Cli, CellsShorthand) {
    const auto j = run_json("oracle --lattice a2 --d2 4 --cells 3x3");
    EXPECT_EQ(j["results"]["torus"]["site_count"], 36);
    EXPECT_EQ(j["results"]["max_count"], 9);
}

TEST(Cli, Deterministic) {
    const std::string args = "gibbs-mcmc --lattice a2 --d2 4 --cells 3x3 --u 2 --steps 20000 --seed 5";
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto r1 = run("render --lattice a2 --d2 9 --what pgs"), r2 = run("render --lattice a2 --d2 9 --what pgs");
    EXPECT_EQ(r1.code, 0);
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(r1.out.rfind("<svg", 0), 0u);
}

TEST(Cli, RenderToFile) {
    const std::string path = ::testing::TempDir() + "contour.svg";
    const auto j = run_json("render --lattice a2 --d2 4 --what contour --out " + path);
    ASSERT_EQ(j["results"]["contours"].size(), 1u);
    EXPECT_EQ(j["results"]["contours"][0]["cells"], 9);
    EXPECT_EQ(j["results"]["contours"][0]["weight_exponent"], -1);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("<svg", 0), 0u);
    EXPECT_EQ(run("render --lattice a2 --d2 9 --what pgs --cells 40x40 --budget 10").code, 3);
}

TEST(Cli, Dominance) {
    const auto j = run_json("dominance --lattice a2 --d2 9");
    EXPECT_EQ(j["results"]["egd_count"], 9);
}

TEST(Cli, Peierls) {
    const auto j = run_json("peierls --lattice a2 --d2 4");
    EXPECT_EQ(j["results"]["holds"], true);
    EXPECT_EQ(j["results"]["min_ratio"]["num"], 1);
    EXPECT_EQ(j["results"]["min_ratio"]["den"], 3);
    EXPECT_EQ(run_json("peierls --lattice z2 --d2 9")["results"]["holds"], false);
}
