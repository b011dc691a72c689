#include "cli.hpp"

#include <mighty/fixtures.hpp>
#include <mighty/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace mighty;
namespace fs = std::filesystem;

namespace
{

const fs::path kScenarios = fs::path(MIGHTY_SOURCE_DIR) / "scenarios";

struct Outcome
{
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep))
        fields.push_back(field);
    if (!line.empty() && line.back() == sep)
        fields.emplace_back();
    return fields;
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        out.push_back(l);
    return out;
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("mighty-cli-" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        unsetenv("MIGHTY_SEED");
    }
    void TearDown() override
    {
        unsetenv("MIGHTY_SEED");
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

Scenario stationary_scenario()
{
    Scenario sc;
    sc.name = "stationary";
    sc.start.p = Vec3(1, 2, 3);
    sc.goal.p = Vec3(1, 2, 3);
    sc.corridors = {axis_box(Vec3(0, 0, 0), Vec3(2, 4, 6))};
    return sc;
}

} // namespace

TEST_F(CliTest, RunWritesDeterministicJsonReport)
{
    const std::string corner = (kScenarios / "corner.json").string();
    ASSERT_EQ(invoke({"run", corner, "--out", path("a.json")}).code, 0);
    ASSERT_EQ(invoke({"run", corner, "--out", path("b.json")}).code, 0);
    auto a = nlohmann::json::parse(slurp(path("a.json")));
    auto b = nlohmann::json::parse(slurp(path("b.json")));
    for (const char *key : {"scenario", "seed", "solve", "metrics", "breakdown", "trajectory", "timing"})
        EXPECT_TRUE(a.contains(key)) << key;
    EXPECT_EQ(a["scenario"], "corner");
    EXPECT_TRUE(a["timing"].contains("t_opt_ms"));
    a.erase("timing");
    b.erase("timing");
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_FALSE(fs::exists(path("a.json.tmp")));
}

TEST_F(CliTest, RunCsvHeaderMatchesDocumentedColumns)
{
    const Outcome r = invoke({"run", (kScenarios / "corner.json").string(), "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "scenario,seed,v_max,scaling,termination,iterations,evaluations,final_cost,t_trav,l_path,"
                       "s_jerk,s_jerk_rms,rho_vel,rho_acc,rho_jerk,dist_min,dist_p5,dist_p50,dist_p95,cost_time,"
                       "cost_smooth,cost_sfc,cost_vel,cost_acc,cost_jerk,cost_dyn,t_opt_ms");
    EXPECT_EQ(split(rows[1], ',').size(), cli::report_csv_columns().size());
}

TEST_F(CliTest, UsageAndIoErrorsExitTwo)
{
    EXPECT_EQ(invoke({"run", path("missing.json")}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"run", (kScenarios / "corner.json").string(), "--format", "xml"}).code, 2);
    std::ofstream(path("bad.json")) << "{\"version\": 1, \"corridors\": [";
    const Outcome bad = invoke({"run", path("bad.json")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_FALSE(bad.err.empty());
    EXPECT_EQ(invoke({"export", (kScenarios / "corner.json").string(), "--solution", path("none.json")}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, SeedEnvironmentOverride)
{
    setenv("MIGHTY_SEED", "42", 1);
    const Outcome r = invoke({"run", (kScenarios / "corner.json").string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["seed"], 42);
    setenv("MIGHTY_SEED", "-3", 1);
    EXPECT_EQ(invoke({"run", (kScenarios / "corner.json").string()}).code, 2);
}

TEST_F(CliTest, GradcheckPassesOnShippedScenarios)
{
    for (const char *name : {"corner.json", "forest.json", "dynamic.json"})
    {
        const Outcome r = invoke({"gradcheck", (kScenarios / name).string()});
        EXPECT_EQ(r.code, 0) << name << "\n" << r.out << r.err;
        EXPECT_NE(r.out.find("total"), std::string::npos);
    }
}

TEST_F(CliTest, GradcheckWarnsOnCoarseStep)
{
    const Outcome r = invoke({"gradcheck", (kScenarios / "corner.json").string(), "--step", "1e-2"});
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_NE(r.err.find("truncation"), std::string::npos);
}

TEST_F(CliTest, GradcheckCorruptedGradientNamesCoordinate)
{
    const Outcome r = invoke({"gradcheck", (kScenarios / "corner.json").string(), "--corrupt-gradient", "4"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("v[1].y"), std::string::npos) << r.err;
    EXPECT_EQ(invoke({"gradcheck", (kScenarios / "corner.json").string(), "--corrupt-gradient", "999"}).code, 2);
}

TEST(CliNames, CoordinateNames)
{
    EXPECT_EQ(cli::coordinate_name(3, 0), "p[1].x");
    EXPECT_EQ(cli::coordinate_name(3, 4), "v[1].y");
    EXPECT_EQ(cli::coordinate_name(3, 17), "a[2].z");
    EXPECT_EQ(cli::coordinate_name(3, 18), "sigma[0]");
    EXPECT_EQ(cli::coordinate_name(3, 20), "sigma[2]");
}

TEST_F(CliTest, SweepListValidation)
{
    const std::string corner = (kScenarios / "corner.json").string();
    EXPECT_EQ(invoke({"sweep", corner, "--vmax", ""}).code, 2);
    EXPECT_EQ(invoke({"sweep", corner}).code, 2);
    EXPECT_EQ(invoke({"sweep", corner, "--vmax", "1,abc"}).code, 2);
    EXPECT_EQ(invoke({"sweep", corner, "--vmax", "-1"}).code, 2);
}

TEST_F(CliTest, SweepDeduplicatesAndWritesPerItemReports)
{
    const Outcome r =
        invoke({"sweep", (kScenarios / "corner.json").string(), "--vmax", "1,2,2", "--jobs", "2", "--out", path("sw")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("duplicate"), std::string::npos);
    const auto one = nlohmann::json::parse(slurp(path("sw/corner-vmax-1.0.json")));
    const auto two = nlohmann::json::parse(slurp(path("sw/corner-vmax-2.0.json")));
    EXPECT_LT(two["metrics"]["t_trav"].get<double>(), one["metrics"]["t_trav"].get<double>());
    const auto csv = lines(slurp(path("sw/sweep.csv")));
    EXPECT_EQ(csv.size(), 3u);
    for (const auto &entry : fs::directory_iterator(path("sw")))
        EXPECT_NE(entry.path().extension(), ".tmp");
}

TEST_F(CliTest, SweepIsIndependentOfJobCount)
{
    const std::string corner = (kScenarios / "corner.json").string();
    ASSERT_EQ(invoke({"sweep", corner, "--vmax", "1.5,2.5", "--jobs", "1", "--out", path("a")}).code, 0);
    ASSERT_EQ(invoke({"sweep", corner, "--vmax", "1.5,2.5", "--jobs", "2", "--out", path("b")}).code, 0);
    for (const char *file : {"corner-vmax-1.5.json", "corner-vmax-2.5.json"})
    {
        auto a = nlohmann::json::parse(slurp(dir_ / "a" / file));
        auto b = nlohmann::json::parse(slurp(dir_ / "b" / file));
        a.erase("timing");
        b.erase("timing");
        EXPECT_EQ(a.dump(), b.dump()) << file;
    }
}

TEST_F(CliTest, AblationSingleSegmentConvergesQuickly)
{
    Scenario sc = stationary_scenario();
    sc.name = "single";
    sc.goal.p = Vec3(1.5, 3.5, 5.5);
    save_scenario(sc, path("single.json"));
    const Outcome r = invoke({"ablation", path("single.json"), "--out", path("ab.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(slurp(path("ab.json")));
    ASSERT_EQ(doc["runs"].size(), 1u);
    EXPECT_LT(doc["runs"][0]["scaled"]["iterations"].get<int>(), 50);
    EXPECT_LT(doc["runs"][0]["unscaled"]["iterations"].get<int>(), 50);
    EXPECT_LE(doc["runs"][0]["relative_cost_gap"].get<double>(), 0.05);
    EXPECT_TRUE(doc.contains("timing"));
}

TEST_F(CliTest, ExportStationarySolution)
{
    const Scenario sc = stationary_scenario();
    save_scenario(sc, path("st.json"));
    const HermiteSpline sp({sc.start, sc.goal}, {5.0});
    std::ofstream(path("sol.json")) << spline_to_json(sp).dump();
    const Outcome r = invoke({"export", path("st.json"), "--solution", path("sol.json"), "--dt", "0.01"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 1u + 501u);
    EXPECT_EQ(rows[0], "t,x,y,z,vx,vy,vz,ax,ay,az,jx,jy,jz,speed,nearest_obstacle");
    for (std::size_t k = 1; k < rows.size(); ++k)
    {
        const auto f = split(rows[k], ',');
        ASSERT_EQ(f.size(), 15u);
        EXPECT_EQ(std::stod(f[1]), 1.0);
        EXPECT_EQ(std::stod(f[2]), 2.0);
        EXPECT_EQ(std::stod(f[3]), 3.0);
        for (int c = 4; c < 14; ++c)
            EXPECT_EQ(std::stod(f[c]), 0.0) << "row " << k << " column " << c;
        EXPECT_EQ(f[14], "");
    }
}

TEST_F(CliTest, ExportRowCountAndSpeedColumn)
{
    const std::string dyn = (kScenarios / "dynamic.json").string();
    ASSERT_EQ(invoke({"run", dyn, "--out", path("r.json")}).code, 0);
    const double T = nlohmann::json::parse(slurp(path("r.json")))["metrics"]["t_trav"].get<double>();
    const double dt = 0.037;
    const Outcome r = invoke({"export", dyn, "--solution", path("r.json"), "--dt", "0.037"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    EXPECT_EQ(rows.size(), 1u + static_cast<std::size_t>(std::floor(T / dt)) + 1u);
    for (std::size_t k = 1; k < rows.size(); ++k)
    {
        const auto f = split(rows[k], ',');
        const double speed = std::sqrt(std::pow(std::stod(f[4]), 2) + std::pow(std::stod(f[5]), 2) +
                                       std::pow(std::stod(f[6]), 2));
        EXPECT_NEAR(std::stod(f[13]), speed, 1e-12 * std::max(1.0, speed));
        EXPECT_GT(std::stod(f[14]), 0.0);
    }
    EXPECT_EQ(invoke({"export", dyn, "--solution", path("r.json"), "--dt", "0"}).code, 2);
}
