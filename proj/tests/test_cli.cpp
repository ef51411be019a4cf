#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gwave/cli/commands.hpp"

using namespace gwave;
using cli::json;
namespace fs = std::filesystem;

namespace {

json five_vertex_config(VertexSet s, Vertex source = 2)
{
    return {{"graph", cli::five_vertex_network_json()},
            {"eta", 0.1},
            {"grid", {{"T", 40.0}, {"dt", 0.1}, {"T0", 10.0}}},
            {"initial", {{"x0", {0.2, -0.1, 0.3, 0.0, 0.1}}}},
            {"disturbances", json::array({{{"vertex", source}, {"onset", 12.0}, {"duration", 60.0}}})},
            {"observation_set", s}};
}

fs::path scratch(std::string const& name)
{
    auto const p = fs::temp_directory_path() / ("gwave_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(fs::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, ParsesDefaultsAndSortsObservationSet)
{
    auto const c = cli::parse_config(five_vertex_config({5, 1, 4}));
    EXPECT_EQ(c.n, 5);
    EXPECT_EQ(c.edges.size(), 7u);
    EXPECT_EQ(c.observed, (VertexSet{1, 4, 5}));
    EXPECT_FALSE(c.epsilon.has_value());
    EXPECT_EQ(c.substeps, 10u);
    ASSERT_EQ(c.disturbances.size(), 1u);
    EXPECT_EQ(c.disturbances[0].kind, DisturbanceKind::sine_halfperiod);
    EXPECT_DOUBLE_EQ(c.disturbances[0].onset, 12.0);
    EXPECT_EQ(c.x0.size(), 5u);
    EXPECT_EQ(c.identification.mode, IdentificationMode::automatic);
}

TEST(Config, RejectsInvalidInput)
{
    auto bad = [](auto mutate) {
        auto j = five_vertex_config({1, 4, 5});
        mutate(j);
        return j;
    };
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j.erase("graph"); })), cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["graph"]["edges"].push_back({1, 9}); })), cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["grid"]["dt"] = 0.3; })), cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["observation_set"] = {1, 7}; })), cli::ConfigError);
    // disturbance on an observed vertex
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["disturbances"][0]["vertex"] = 4; })), cli::ConfigError);
    // disturbance active on the healthy interval
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["disturbances"][0]["onset"] = 5.0; })), cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["detection"] = {{"epsilon", -1.0}}; })), cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["identification"] = {{"mode", "fast"}}; })),
                 cli::ConfigError);
    EXPECT_THROW(cli::parse_config(bad([](json& j) { j["initial"]["x0"] = {1.0}; })), cli::ConfigError);
    EXPECT_THROW(cli::load_config("/nonexistent/gwave.json"), cli::ConfigError);
}

TEST(Config, EpsilonAutoOrNumber)
{
    auto j = five_vertex_config({1, 4, 5});
    j["detection"] = {{"epsilon", "auto"}};
    EXPECT_FALSE(cli::parse_config(j).epsilon.has_value());
    j["detection"] = {{"epsilon", 1e-5}, {"window", 3}};
    auto const c = cli::parse_config(j);
    ASSERT_TRUE(c.epsilon.has_value());
    EXPECT_DOUBLE_EQ(*c.epsilon, 1e-5);
    EXPECT_EQ(c.window, 3u);
}

TEST(AnalyzeGraph, ReferenceNetworks)
{
    json j = five_vertex_config({1, 2, 5});
    j["graph"] = {{"n", 6}, {"edges", {{1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {3, 6}, {5, 6}}}};
    j["disturbances"] = json::array();
    j.erase("initial");
    auto r = cli::analyze_graph(cli::parse_config(j));
    EXPECT_TRUE(r["absorbent"].get<bool>());
    EXPECT_TRUE(r["dominantly_absorbent"].get<bool>());
    EXPECT_EQ(r["joints"].get<VertexSet>(), (VertexSet{3}));

    r = cli::analyze_graph(cli::parse_config(five_vertex_config({1, 4, 5})));
    EXPECT_TRUE(r["dominantly_absorbent"].get<bool>());
    EXPECT_TRUE(r["strategic"].get<bool>());
    EXPECT_EQ(r["spectrum"].size(), 5u);

    r = cli::analyze_graph(cli::parse_config(five_vertex_config({1, 4})));
    EXPECT_FALSE(r["dominantly_absorbent"].get<bool>());
    EXPECT_TRUE(r["absorbent"].get<bool>());

    auto const fa = cli::find_absorbent(cli::parse_config(five_vertex_config({1, 4})));
    EXPECT_TRUE(fa["absorbent"].get<bool>());
}

TEST(Pipeline, SimulateDetectIdentifyCompose)
{
    auto const dir = scratch("compose");
    auto const c = cli::parse_config(five_vertex_config({1, 4, 5}));
    auto const sim = cli::run_simulate(c, dir.string());
    for (char const* f : {"trajectory.csv", "observations.csv", "disturbances.csv"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;

    // the csv round trip must reproduce the in-memory observations exactly
    auto const obs = cli::load_observations(c, (dir / "observations.csv").string());
    EXPECT_EQ(max_abs_difference(obs.values, sim.observations.values), 0.0);

    auto const det = cli::run_detect(c, obs, dir.string());
    ASSERT_TRUE(det.report.detected);
    EXPECT_GE(det.report.t_bar, 12.0 - 1e-9);
    EXPECT_LE(det.report.t_bar, 14.0);
    auto const dj = json::parse(slurp(dir / "detection.json"));
    EXPECT_TRUE(dj["detected"].get<bool>());
    EXPECT_EQ(dj["residual_trace"].size(), det.report.trace.size());
    // recovered initial state
    for (std::size_t i = 0; i < 5; ++i)
        EXPECT_NEAR(det.ic.x0[i], c.x0[i], 1e-6);

    auto const res = cli::run_identify(c, obs, det, dir.string());
    EXPECT_EQ(res.mode, IdentificationMode::da);
    EXPECT_EQ(res.localized, (VertexSet{2}));
    auto const ij = json::parse(slurp(dir / "identification.json"));
    EXPECT_EQ(ij["mode"], "da");
    EXPECT_TRUE(ij["residuals"].contains("2"));
    EXPECT_TRUE(ij["residuals"].contains("3"));
    EXPECT_TRUE(ij["disturbances"].contains("2"));
    EXPECT_TRUE(ij["diagnostics"].contains("condition"));
    EXPECT_TRUE(fs::exists(dir / "residuals.csv"));
    EXPECT_TRUE(fs::exists(dir / "disturbance_2.csv"));
    fs::remove_all(dir);
}

TEST(Pipeline, SimulateIsByteReproducible)
{
    auto j = five_vertex_config({1, 4, 5});
    j["noise"] = {{"std", 1e-4}, {"seed", 42}};
    j["initial"] = {{"random", 0.5}};
    auto const c = cli::parse_config(j);
    auto const a = scratch("repro_a"), b = scratch("repro_b");
    cli::run_simulate(c, a.string());
    cli::run_simulate(c, b.string());
    for (char const* f : {"trajectory.csv", "observations.csv", "disturbances.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;

    auto c2 = c;
    c2.seed = 43;
    auto const other = cli::simulate_scenario(c2);
    EXPECT_GT(max_abs_difference(other.observations.values, cli::simulate_scenario(c).observations.values), 0.0);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Pipeline, ForcedDaModeRefusedOnAbsorbentOnlySet)
{
    auto j = five_vertex_config({1, 4}, 3);
    j["identification"] = {{"mode", "da"}};
    auto const c = cli::parse_config(j);
    auto const sim = cli::simulate_scenario(c);
    auto const det = cli::detect_scenario(c, sim.observations);
    EXPECT_THROW(cli::identify_scenario(c, sim.observations, det), PreconditionError);
}

TEST(Pipeline, NonStrategicSetIsRefusedByDetect)
{
    // on C4 a single vertex misses the doubly degenerate cluster
    json j = {{"graph", {{"n", 4}, {"edges", {{1, 2}, {2, 3}, {3, 4}, {1, 4}}}}},
              {"grid", {{"T", 20.0}, {"dt", 0.1}, {"T0", 10.0}}},
              {"observation_set", {1}}};
    auto const c = cli::parse_config(j);
    auto const sim = cli::simulate_scenario(c);
    EXPECT_THROW(cli::detect_scenario(c, sim.observations), PreconditionError);
}

TEST(Pipeline, HealthyDataOrHugeEpsilonIsNotDetected)
{
    auto j = five_vertex_config({1, 4, 5});
    auto c = cli::parse_config(j);
    c.epsilon = 1e300;
    EXPECT_FALSE(cli::detect_scenario(c, cli::simulate_scenario(c).observations).report.detected);

    j["disturbances"] = json::array();
    auto const healthy = cli::parse_config(j);
    EXPECT_FALSE(cli::detect_scenario(healthy, cli::simulate_scenario(healthy).observations).report.detected);
}

TEST(Observations, MismatchedFileIsRejected)
{
    auto const dir = scratch("mismatch");
    auto const c = cli::parse_config(five_vertex_config({1, 4, 5}));
    cli::run_simulate(c, dir.string());
    auto const other = cli::parse_config(five_vertex_config({1, 4}));
    EXPECT_THROW(cli::load_observations(other, (dir / "observations.csv").string()), cli::ConfigError);
    fs::remove_all(dir);
}
