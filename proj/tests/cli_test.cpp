#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

const std::string kCli = ELASCOMPLEX_CLI;
const std::string kTmp = ELASCOMPLEX_TMP;

int run(const std::string& args)
{
    int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, InvalidArgumentsExitTwo)
{
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("bogus"), 2);
    EXPECT_EQ(run("complexes"), 2);
    EXPECT_EQ(run("unisolvence --family argyris --k 6"), 2);
    EXPECT_EQ(run("unisolvence --family hinc --k 5"), 2);
    EXPECT_EQ(run("unisolvence --family hinc --k 6 --tet sphere"), 2);
    EXPECT_EQ(run("bubbles --k 2"), 2);
    EXPECT_EQ(run("traces --degree 9"), 2);
    EXPECT_EQ(run("assemble --mesh /nonexistent.mesh --k 6"), 2);
    EXPECT_EQ(run("complexes --k 0"), 2);
}

TEST(Cli, FailedCheckExitsOne)
{
    EXPECT_EQ(run("unisolvence --family hinc --k 6 --drop face.tr2.sym_curl"), 1);
}

TEST(Cli, UnisolvenceReportIsDeterministic)
{
    std::string a = kTmp + "/uni_a.json", b = kTmp + "/uni_b.json";
    ASSERT_EQ(run("unisolvence --family hinc --k 6 --out " + a), 0);
    ASSERT_EQ(run("unisolvence --family hinc --k 6 --out " + b), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    auto doc = nlohmann::json::parse(slurp(a));
    EXPECT_EQ(doc["version"], 1);
    EXPECT_TRUE(doc["pass"].get<bool>());
    const auto& rep = doc["reports"][0];
    for (const auto& c : rep["checks"])
        if (c["name"] == "unisolvent")
            EXPECT_EQ(c["actual"]["rank"], 504);
    EXPECT_EQ(rep["parameters"]["element"]["entity_counts"]["edge"][0], 45);
}

TEST(Cli, RandomTetFollowsSeed)
{
    std::string a = kTmp + "/r_a.json", b = kTmp + "/r_b.json", c = kTmp + "/r_c.json";
    ASSERT_EQ(run("unisolvence --family huzhang --k 6 --tet random --seed 4 --out " + a), 0);
    ASSERT_EQ(run("unisolvence --family huzhang --k 6 --tet random --seed 4 --out " + b), 0);
    ASSERT_EQ(run("unisolvence --family huzhang --k 6 --tet random --seed 5 --out " + c), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a), slurp(c));
}

TEST(Cli, AssembleReferenceTet)
{
    std::string a = kTmp + "/asm.json";
    ASSERT_EQ(run("assemble --mesh reftet --k 6 --out " + a), 0);
    auto doc = nlohmann::json::parse(slurp(a));
    std::map<std::string, nlohmann::json> actual;
    for (const auto& c : doc["reports"][0]["checks"])
        actual[c["name"]] = c["actual"];
    EXPECT_EQ(actual["dim_V"], 360);
    EXPECT_EQ(actual["dim_Sigma_inc"], 504);
    EXPECT_EQ(actual["dim_Sigma_div"], 210);
    EXPECT_EQ(actual["dim_Q"], 60);
    EXPECT_EQ(actual["alternating_sum"], 0);
}

TEST(Cli, AssembleFromMeshFile)
{
    std::string mesh = kTmp + "/half.mesh";
    std::ofstream(mesh) << "v 0 0 0\nv 1/2 0 0\nv 0 1/2 0\nv 0 0 1/2\nt 0 1 2 3\n";
    EXPECT_EQ(run("assemble --mesh " + mesh + " --k 6"), 0);
}

TEST(Cli, ComplexesRunsFiveComplexes)
{
    std::string a = kTmp + "/cx.json";
    ASSERT_EQ(run("complexes --k 4 --out " + a), 0);
    auto doc = nlohmann::json::parse(slurp(a));
    std::size_t exact = 0;
    for (const auto& c : doc["reports"][0]["checks"]) {
        std::string name = c["name"];
        if (name.size() > 6 && name.substr(name.size() - 6) == ".exact")
            ++exact;
        EXPECT_TRUE(c["pass"].get<bool>()) << name;
    }
    EXPECT_EQ(exact, 5u);
    ASSERT_EQ(run("complexes --k 4 --2d --out " + a), 0);
}

TEST(Cli, TracesAndBubbles)
{
    EXPECT_EQ(run("traces --degree 3"), 0);
    EXPECT_EQ(run("bubbles --k 4"), 0);
}
