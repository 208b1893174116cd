#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"

namespace nq = netquake;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("netquake_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(NETQUAKE_CLI) + " " + args + " 2>" + path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string& file) {
        std::ifstream in(file, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static nlohmann::json record(const std::string& file) { return nlohmann::json::parse(slurp(file)); }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, AttackStarDegree) {
    write("star.txt", "0 1\n0 2\n0 3\n0 4\n");
    ASSERT_EQ(run("attack --input " + path("star.txt") + " --strategy deg --output " + path("r.json") +
                  " --curve-csv " + path("c.csv")),
              0);
    auto r = record(path("r.json"));
    EXPECT_TRUE(nq::validate_record(r).empty());
    EXPECT_DOUBLE_EQ(r["R"].get<double>(), 0.16);
    EXPECT_EQ(r["strategy"], "DEG");
    EXPECT_EQ(r["N"], 5);
    EXPECT_EQ(r["M"], 4);
    EXPECT_EQ(r["tool_version"], nq::kToolVersion);
    EXPECT_EQ(slurp(path("c.csv")), "Q,gcs\n0,1\n1,0.2\n2,0.2\n3,0.2\n4,0.2\n5,0\n");
}

TEST_F(Cli, AttackGmlInteractiveBetweenness) {
    ASSERT_EQ(run("attack --input " + fixture::data_path("lesmis.gml") +
                  " --format gml --strategy betw --interactive --output " + path("r.json")),
              0);
    auto r = record(path("r.json"));
    EXPECT_TRUE(nq::validate_record(r).empty());
    EXPECT_EQ(r["strategy"], "IBETW");
    EXPECT_NEAR(r["R"].get<double>(), 0.12, 0.02);
}

TEST_F(Cli, InteractiveCollectiveInfluenceDoesNotBeatBetweennessByMuch) {
    const std::string in = fixture::data_path("lesmis.gml");
    ASSERT_EQ(run("attack --input " + in + " --strategy ci2 --interactive --output " + path("ci.json")), 0);
    ASSERT_EQ(run("attack --input " + in + " --strategy betw --interactive --output " + path("b.json")), 0);
    EXPECT_GE(record(path("ci.json"))["R"].get<double>(), record(path("b.json"))["R"].get<double>() - 0.02);
}

TEST_F(Cli, UsageErrorsExitTwo) {
    write("g.txt", "0 1\n");
    EXPECT_EQ(run("attack --input " + path("g.txt") + " --strategy nope"), 2);
    EXPECT_EQ(run("attack --input " + path("g.txt") + " --format xml"), 2);
    EXPECT_EQ(run("attack"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("gen --model ba --n 5 --m 5"), 2);
    EXPECT_EQ(run("gen --model er --n 5 --p 2"), 2);
}

TEST_F(Cli, DataErrorsExitOneWithLineNumber) {
    write("bad.txt", "0 1\n1 2 3\n");
    EXPECT_EQ(run("attack --input " + path("bad.txt")), 1);
    EXPECT_NE(slurp(path("stderr.txt")).find("line 2"), std::string::npos);
    EXPECT_EQ(run("attack --input " + path("missing.txt")), 1);
    write("bad.gml", "graph [ node [ id 0 ]");
    EXPECT_EQ(run("attack --input " + path("bad.gml")), 1);
}

TEST_F(Cli, QreIsDeterministicAndRecordsHistory) {
    const std::string in = fixture::data_path("lesmis.gml");
    const std::string flags = " --x 50 --z 4 --seed 3 --threads 2";
    ASSERT_EQ(run("qre --input " + in + flags + " --output " + path("a.json")), 0);
    ASSERT_EQ(run("qre --input " + in + flags + " --output " + path("b.json")), 0);
    auto a = record(path("a.json"));
    auto b = record(path("b.json"));
    EXPECT_TRUE(nq::validate_record(a).empty());
    EXPECT_EQ(a["history"].size(), 5u);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["params"]["Z"], 4);
    EXPECT_EQ(a["params"]["X"], 50);
}

TEST_F(Cli, QreWithoutRefinementIsNoBetter) {
    const std::string in = fixture::data_path("lesmis.gml");
    ASSERT_EQ(run("qre --input " + in + " --z 0 --seed 5 --output " + path("z0.json")), 0);
    ASSERT_EQ(run("qre --input " + in + " --seed 5 --output " + path("full.json")), 0);
    EXPECT_GE(record(path("z0.json"))["R"].get<double>(), record(path("full.json"))["R"].get<double>());
}

TEST_F(Cli, QrePaperRuleSelectsSmallPivotCount) {
    ASSERT_EQ(run("qre --input " + fixture::data_path("lesmis.gml") + " --y-mode paper --output " + path("r.json")), 0);
    auto r = record(path("r.json"));
    EXPECT_EQ(r["params"]["Y"], 2);
    EXPECT_EQ(r["params"]["y_mode"], "paper_literal");
}

TEST_F(Cli, GenBarabasiAlbert) {
    ASSERT_EQ(run("gen --model ba --n 10 --m 2 --seed 7 --output " + path("a.txt")), 0);
    ASSERT_EQ(run("gen --model ba --n 10 --m 2 --seed 7 --output " + path("b.txt")), 0);
    const auto text = slurp(path("a.txt"));
    EXPECT_EQ(text, slurp(path("b.txt")));
    std::istringstream in(text);
    auto g = nq::load_edge_list(in);
    EXPECT_EQ(g.node_count(), 10u);
    EXPECT_EQ(g.edge_count(), 17u);
}

TEST_F(Cli, GenEmptyErdosRenyiRoundTrips) {
    ASSERT_EQ(run("gen --model er --n 100 --p 0 --output " + path("e.txt")), 0);
    EXPECT_EQ(slurp(path("e.txt")), "# nodes 100\n");
    ASSERT_EQ(run("attack --input " + path("e.txt") + " --output " + path("r.json")), 0);
    auto r = record(path("r.json"));
    EXPECT_EQ(r["N"], 100);
    EXPECT_EQ(r["M"], 0);
    // Every isolated node is a giant component of size 1 until the last removal.
    EXPECT_DOUBLE_EQ(r["R"].get<double>(), 0.0099);
}

TEST_F(Cli, BenchMatrix) {
    write("star.txt", "0 1\n0 2\n0 3\n0 4\n");
    ASSERT_EQ(run("bench --input " + path("star.txt") + " --input " + fixture::data_path("lesmis.gml") +
                  " --strategies deg,ideg,ici2,qre --repeats 3 --threads 3 --output " + path("t.csv")),
              0);
    std::istringstream table(slurp(path("t.csv")));
    std::string header, star, lesmis;
    std::getline(table, header);
    std::getline(table, star);
    std::getline(table, lesmis);
    EXPECT_EQ(header, "network,N,M,DEG_R,DEG_ms,IDEG_R,IDEG_ms,ICI2_R,ICI2_ms,QRE_R,QRE_ms");
    EXPECT_EQ(star.rfind("star,5,4,0.1600,", 0), 0u);
    EXPECT_EQ(lesmis.rfind("lesmis,77,254,", 0), 0u);
}

TEST_F(Cli, BenchMarksTimeouts) {
    ASSERT_EQ(run("gen --model ba --n 100000 --m 2 --seed 1 --output " + path("big.txt")), 0);
    ASSERT_EQ(run("bench --input " + path("big.txt") + " --strategies ibetw,deg --timeout 1 --output " +
                  path("t.csv")),
              0);
    std::istringstream table(slurp(path("t.csv")));
    std::string header, row;
    std::getline(table, header);
    std::getline(table, row);
    EXPECT_EQ(row.rfind("big,100000,199997,timeout,timeout,", 0), 0u) << row;
}
