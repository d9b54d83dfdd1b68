#include "flatlink/complex_io.hpp"
#include "flatlink/fixtures.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace flatlink;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " FLATLINK_CLI " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {};
    Outcome o;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        o.out.append(buf.data(), n);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

Json report(const Outcome& o) { return Json::parse(o.out); }

std::string sample(const std::string& name) { return FLATLINK_SOURCE_DIR "/samples/" + name; }

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("flatlink-cli-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text)
    {
        const auto p = (dir / name).string();
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir;
};

} // namespace

TEST_F(Cli, VerifyExitCodes)
{
    auto o = run("verify " + sample("boundary-16-cell.json"));
    EXPECT_EQ(o.code, 1);
    auto r = report(o);
    EXPECT_TRUE(r["checks"]["flag"]["pass"].get<bool>());
    EXPECT_TRUE(r["checks"]["homology_sphere"]["pass"].get<bool>());
    EXPECT_FALSE(r["checks"]["isolated_squares"]["pass"].get<bool>());
    EXPECT_EQ(r["checks"]["isolated_squares"]["square_count"], 6);
    EXPECT_TRUE(r["checks"]["isolated_squares"].contains("offending_vertex"));

    o = run("verify " + sample("boundary-4-simplex.json"));
    EXPECT_EQ(o.code, 1);
    EXPECT_FALSE(report(o)["checks"]["flag"]["pass"].get<bool>());

    o = run("verify " + sample("600-cell.json"));
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(report(o)["result"]["pass"].get<bool>());

    // A graph is valid input that fails the manifold check.
    EXPECT_EQ(run("verify " + sample("c4.json")).code, 1);
    o = run("verify " + sample("suspension-3-points.json"));
    EXPECT_EQ(o.code, 1);
    EXPECT_FALSE(report(o)["checks"]["caprace"]["pass"].get<bool>());
    EXPECT_FALSE(report(o)["checks"]["caprace"]["witnesses"].empty());
}

TEST_F(Cli, MalformedInputIsUsageError)
{
    EXPECT_EQ(run("verify " + write("trunc.json", R"({"vertices": 4, "facets": [[0,1],)")).code, 2);
    EXPECT_EQ(run("verify " + write("range.json", R"({"vertices": 2, "facets": [[0,5]]})")).code, 2);
    EXPECT_EQ(run("verify " + write("shape.json", R"([1,2,3])")).code, 2);
    EXPECT_EQ(run("verify " + (dir / "missing.json").string()).code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("davis " + sample("c4.json")).code, 2); // -n is required
    EXPECT_EQ(run("davis " + sample("c4.json") + " -n -1").code, 2);
    EXPECT_EQ(run("fixture no-such-fixture").code, 2);
    EXPECT_EQ(run("lk diagram " + write("bad.json", R"({"m": 2, "crossings": []})")).code, 2);
    EXPECT_EQ(run("build --matrix " + sample("asymmetric-matrix.json")).code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, Obstruct)
{
    auto o = run("obstruct " + sample("600-cell.json"));
    EXPECT_EQ(o.code, 0);
    auto r = report(o);
    EXPECT_EQ(r["result"]["verdict"], "NoObstructionDetected");
    EXPECT_TRUE(r["result"]["linking_matrix"].empty());
    EXPECT_EQ(run("obstruct " + sample("boundary-16-cell.json")).code, 1);
    EXPECT_EQ(run("obstruct " + sample("boundary-4-simplex.json") + " --certify-nontrivial").code, 1);
}

TEST_F(Cli, PkAndDavis)
{
    auto o = run("pk " + sample("c4.json") + " --homology");
    ASSERT_EQ(o.code, 0);
    auto r = report(o);
    EXPECT_EQ(r["result"]["f_vector"], Json::parse("[16,32,16]"));
    EXPECT_EQ(r["result"]["euler_characteristic"], 0);
    EXPECT_EQ(r["result"]["homology"], "H0=Z, H1=Z^2, H2=Z");

    const auto out = (dir / "pk.json").string();
    EXPECT_EQ(run("pk " + sample("c4.json") + " --emit-complex --out " + out).code, 0);
    std::ifstream in(out);
    const Json saved = Json::parse(in);
    EXPECT_EQ(saved["result"]["complex"]["ground"], 4);

    EXPECT_EQ(run("pk " + sample("c4.json"), "FLATLINK_MAX_GROUND=3").code, 2);
    EXPECT_EQ(run("pk " + sample("c4.json"), "FLATLINK_MAX_GROUND=four").code, 2);
    EXPECT_EQ(run("pk " + sample("c4.json"), "FLATLINK_MAX_GROUND=4").code, 0);
    EXPECT_EQ(run("pk " + sample("600-cell.json")).code, 2);

    o = run("davis " + sample("c4.json") + " -n 0");
    ASSERT_EQ(o.code, 0);
    r = report(o);
    EXPECT_EQ(r["result"]["vertex_count"], 1);
    EXPECT_EQ(r["result"]["f_vector"], Json::parse("[1]"));
    o = run("davis " + sample("c4.json") + " -n 3");
    EXPECT_EQ(report(o)["result"]["sphere_sizes"], Json::parse("[1,4,8,12]"));
}

TEST_F(Cli, LinkingNumbers)
{
    auto o = run("lk diagram --fixture solomon");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(report(o)["result"]["linking_matrix"], Json::parse("[[0,2],[2,0]]"));
    o = run("lk diagram " + sample("whitehead-diagram.json"));
    EXPECT_EQ(report(o)["result"]["linking_matrix"], Json::parse("[[0,0],[0,0]]"));

    o = run("lk simplicial " + sample("boundary-16-cell.json") + " --link " + sample("hopf-16-cell-link.json"));
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(report(o)["result"]["linking_matrix"], Json::parse("[[0,1],[1,0]]"));
    o = run("lk simplicial --fixture hopf-16-cell --reverse-ambient");
    EXPECT_EQ(report(o)["result"]["linking_matrix"], Json::parse("[[0,-1],[-1,0]]"));
    // Squares of the 16-cell overlap, so no link can be read off them.
    EXPECT_EQ(run("lk simplicial " + sample("boundary-16-cell.json")).code, 2);
    EXPECT_EQ(run("lk simplicial " + sample("c4.json") + " --link " + sample("hopf-16-cell-link.json")).code, 2);
}

TEST_F(Cli, FixtureAndBuild)
{
    auto o = run("fixture octahedron");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(Json::parse(o.out), complex_to_json(fixture("octahedron")));

    const auto out = (dir / "oct.json").string();
    o = run("fixture octahedron --out " + out);
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(load_complex(out), fixture("octahedron"));
    EXPECT_EQ(run("verify " + out).code, 1);

    o = run("fixture --list");
    EXPECT_EQ(o.code, 0);
    EXPECT_GE(report(o)["result"]["fixtures"].size(), fixtures::names().size());

    o = run("build --emit-complex --seed 5");
    ASSERT_EQ(o.code, 0);
    auto r = report(o);
    EXPECT_TRUE(r["result"]["found"].get<bool>());
    EXPECT_EQ(r["seed"], 5);
    const auto found = write("found.json", r["result"]["complex"].dump());
    EXPECT_EQ(run("verify " + found).code, 0);

    o = run("build --diagram hopf --max-candidates 0");
    EXPECT_EQ(o.code, 0);
    EXPECT_FALSE(report(o)["result"]["found"].get<bool>());
    o = run("build --matrix " + sample("solomon-matrix.json") + " --max-candidates 4");
    EXPECT_EQ(o.code, 0);
    EXPECT_FALSE(report(o)["result"]["found"].get<bool>());
}

TEST_F(Cli, ReportsAreDeterministic)
{
    const std::vector<std::string> commands{"verify " + sample("boundary-16-cell.json"),
                                            "pk " + sample("octahedron.json"), "build --seed 3",
                                            "lk diagram --fixture lk-1-3-3"};
    for (const auto& args : commands) {
        auto a = report(run(args));
        auto b = report(run(args));
        ASSERT_TRUE(a.contains("timing"));
        for (const char* key : {"command", "inputs", "version", "seed", "exit_code"})
            EXPECT_TRUE(a.contains(key)) << key;
        a.erase("timing");
        b.erase("timing");
        EXPECT_EQ(a.dump(), b.dump()) << args;
    }
    const auto r = report(run("verify " + sample("c4.json")));
    EXPECT_EQ(r["inputs"].begin().value().get<std::string>().rfind("sha256:", 0), 0u);
}

TEST_F(Cli, HumanOutput)
{
    auto o = run("verify " + sample("boundary-16-cell.json") + " --human");
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.out.find("isolated squares: no"), std::string::npos);
    o = run("obstruct " + sample("600-cell.json") + " --human");
    EXPECT_NE(o.out.find("verdict: NoObstructionDetected"), std::string::npos);
}
