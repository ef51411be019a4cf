#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gwave/cli/config.hpp"
#include "gwave/detection.hpp"
#include "gwave/graph/observation_sets.hpp"
#include "gwave/healthy_state.hpp"
#include "gwave/identification.hpp"
#include "gwave/io/csv.hpp"
#include "gwave/spectral.hpp"

namespace gwave::cli {

namespace fs = std::filesystem;

inline void write_json_file(fs::path const& path, json const& j)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot open '" + path.string() + "' for writing");
    os << j.dump(2) << '\n';
    if (!os)
        throw Error("write to '" + path.string() + "' failed");
}

inline fs::path prepare_output_dir(std::string const& dir)
{
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec)
        throw Error("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

// ---------------------------------------------------------------- analyze

inline json analyze_graph(ScenarioConfig const& c)
{
    auto const g = c.graph();
    auto const lap = laplacian(g);
    auto const spec = decompose(lap);
    auto const part = c.partition();
    json j;
    j["n"] = g.vertex_count();
    j["edge_count"] = g.edges().size();
    json sp = json::array();
    for (auto const& cl : spec.clusters)
        sp.push_back({{"eigenvalue", cl.eigenvalue}, {"omega", cl.omega}, {"multiplicity", cl.multiplicity()}});
    j["spectrum"] = sp;
    j["spectral_warnings"] = spec.warnings;
    auto const rep = strategic_report(spec, c.observed);
    j["observation_set"] = c.observed;
    j["strategic"] = rep.strategic;
    j["failing_clusters"] = rep.failing_clusters;
    j["strategic_message"] = rep.message;
    j["absorbent"] = is_absorbent(g, c.observed);
    j["dominantly_absorbent"] = is_dominantly_absorbent(g, part);
    j["joints"] = find_joints(g);
    j["suggested_absorbent_set"] = find_absorbent_set(g);
    return j;
}

inline json find_absorbent(ScenarioConfig const& c)
{
    auto const g = c.graph();
    auto const spec = decompose(laplacian(g));
    auto const s = find_absorbent_set(g);
    json j;
    j["absorbent_set"] = s;
    j["absorbent"] = is_absorbent(g, s);
    j["dominantly_absorbent"] = is_dominantly_absorbent(g, VertexPartition(g.vertex_count(), s));
    j["strategic"] = is_strategic(spec, s);
    j["joints"] = find_joints(g);
    return j;
}

// --------------------------------------------------------------- simulate

struct SimulationOutput {
    StateTrajectory trajectory;
    Observations observations;
    Vector x0, v0;
};

inline void initial_state(ScenarioConfig const& c, Vector& x0, Vector& v0)
{
    auto const n = static_cast<std::size_t>(c.n);
    x0 = c.x0.empty() ? Vector(n, 0.0) : c.x0;
    v0 = c.v0.empty() ? Vector(n, 0.0) : c.v0;
    if (c.random_ic > 0) {
        // separate stream from the observation noise
        std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_real_distribution<double> u(-c.random_ic, c.random_ic);
        for (auto& v : x0)
            v += u(rng);
        for (auto& v : v0)
            v += u(rng);
    }
}

inline SimulationOutput simulate_scenario(ScenarioConfig const& c)
{
    SimulationOutput out;
    initial_state(c, out.x0, out.v0);
    auto const grid = c.grid();
    auto const source = combined_source(known_source(c), c.disturbances);
    out.trajectory =
        simulate_forward(laplacian(c.graph()), c.eta, source, out.x0, out.v0, grid, {.substeps = c.substeps});
    out.observations = generate_observations(out.trajectory, c.observed, c.noise_std, c.seed);
    return out;
}

/// Ground-truth disturbances: columns t, F_<v> per disturbed vertex.
inline io::CsvTable disturbance_table(ScenarioConfig const& c)
{
    VertexSet verts;
    for (auto const& d : c.disturbances)
        if (std::find(verts.begin(), verts.end(), d.vertex) == verts.end())
            verts.push_back(d.vertex);
    std::sort(verts.begin(), verts.end());
    io::CsvTable t;
    t.header.push_back("t");
    for (Vertex v : verts)
        t.header.push_back("F_" + std::to_string(v));
    auto const grid = c.grid();
    for (std::size_t i = 0; i < grid.samples(); ++i) {
        std::vector<double> row{grid.t(i)};
        for (Vertex v : verts) {
            double f = 0.0;
            for (auto const& d : c.disturbances)
                if (d.vertex == v)
                    f += d.value(grid.t(i));
            row.push_back(f);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline SimulationOutput run_simulate(ScenarioConfig const& c, std::string const& out_dir)
{
    auto const dir = prepare_output_dir(out_dir);
    auto out = simulate_scenario(c);
    io::write_csv_file((dir / "trajectory.csv").string(), io::trajectory_table(out.trajectory));
    io::write_csv_file((dir / "observations.csv").string(), io::observations_table(out.observations));
    io::write_csv_file((dir / "disturbances.csv").string(), disturbance_table(c));
    return out;
}

/// Observations from a csv written by run_simulate, checked against the config.
inline Observations load_observations(ScenarioConfig const& c, std::string const& path)
{
    auto obs = io::observations_from_table(io::read_csv_file(path));
    if (obs.vertices != c.observed)
        throw ConfigError("observations '" + path + "' do not cover the configured observation_set");
    if (std::abs(obs.dt - c.dt) > 1e-9 * c.dt)
        throw ConfigError("observations '" + path + "' use a different time step than the config");
    obs.dt = c.dt;
    if (obs.samples() < c.grid().samples())
        throw ConfigError("observations '" + path + "' do not cover (0, T)");
    return obs;
}

// ----------------------------------------------------------------- detect

struct DetectionOutput {
    InitialConditions ic;
    StateTrajectory healthy;
    DetectionReport report;
};

inline DetectionOutput detect_scenario(ScenarioConfig const& c, Observations const& obs)
{
    auto const lap = laplacian(c.graph());
    auto const spec = decompose(lap);
    auto const rep = strategic_report(spec, c.observed);
    if (!rep.strategic)
        throw PreconditionError("detect: " + rep.message);
    auto const grid = c.grid();
    auto const source = known_source(c);
    SimulationOptions const opt{.substeps = c.substeps};
    DetectionOutput out;
    auto const xf = particular_solution(lap, c.eta, source, grid, opt);
    out.ic = identify_initial_conditions(assemble_gradient_system(spec, obs, xf, c.eta, grid), spec);
    out.healthy = compute_healthy_state(spec, lap, c.eta, out.ic.x0, out.ic.v0, source, grid, opt);
    double const eps = c.epsilon ? *c.epsilon : auto_epsilon(obs, out.healthy, grid, c.window);
    out.report = detect(obs, out.healthy, eps, grid, c.window);
    return out;
}

inline json detection_json(DetectionOutput const& d)
{
    json j;
    j["detected"] = d.report.detected;
    j["t_bar"] = d.report.detected ? json(d.report.t_bar) : json(nullptr);
    j["epsilon"] = d.report.epsilon;
    j["window"] = d.report.window;
    json trace = json::array();
    for (auto const& s : d.report.trace)
        trace.push_back({{"t", s.t}, {"R", s.R}});
    j["residual_trace"] = trace;
    j["initial_conditions"] = {{"x0", d.ic.x0}, {"v0", d.ic.v0}, {"rank", d.ic.rank}, {"singular", d.ic.singular}};
    j["warnings"] = d.ic.warnings;
    return j;
}

inline DetectionOutput run_detect(ScenarioConfig const& c, Observations const& obs, std::string const& out_dir)
{
    auto const dir = prepare_output_dir(out_dir);
    auto out = detect_scenario(c, obs);
    write_json_file(dir / "detection.json", detection_json(out));
    return out;
}

// --------------------------------------------------------------- identify

inline IdentificationResult identify_scenario(ScenarioConfig const& c, Observations const& obs,
                                              DetectionOutput const& det)
{
    return identify(c.graph(), c.partition(), obs, det.healthy, c.eta, c.grid(), det.report, c.identification);
}

inline json identification_json(IdentificationResult const& r)
{
    json j;
    j["mode"] = to_string(r.mode);
    j["status"] = r.status;
    j["localized"] = r.localized;
    json res = json::object();
    for (std::size_t b = 0; b < r.unobserved.size(); ++b) {
        json series = json::array();
        for (std::size_t i = 0; i < r.xr_e.cols(); ++i)
            series.push_back({{"t", r.t(i)}, {"x", r.xr_e(b, i)}});
        res[std::to_string(r.unobserved[b])] = series;
    }
    j["residuals"] = res;
    json dis = json::object();
    for (auto const& [m, f] : r.disturbances) {
        json series = json::array();
        for (std::size_t k = 0; k < f.size(); ++k)
            series.push_back({{"t", r.t(r.first + k)}, {"F", f[k]}});
        dis[std::to_string(m)] = series;
    }
    j["disturbances"] = dis;
    json hyp = json::array();
    for (auto const& h : r.diagnostics.hypotheses)
        hyp.push_back({{"sources", h.sources}, {"fit", h.fit}});
    auto const& d = r.diagnostics;
    j["diagnostics"] = {{"rank", d.rank},
                        {"condition", d.condition},
                        {"alpha", d.alpha},
                        {"L", d.L},
                        {"t_bar_k", d.t_bar_k},
                        {"fit_residual", d.fit_residual},
                        {"screening_fit", d.screening_fit},
                        {"selection", d.selection},
                        {"hypotheses", hyp}};
    return j;
}

inline IdentificationResult run_identify(ScenarioConfig const& c, Observations const& obs,
                                         DetectionOutput const& det, std::string const& out_dir)
{
    auto const dir = prepare_output_dir(out_dir);
    auto res = identify_scenario(c, obs, det);
    write_json_file(dir / "identification.json", identification_json(res));
    io::CsvTable resid;
    resid.header.push_back("t");
    for (Vertex m : res.unobserved)
        resid.header.push_back("xR_" + std::to_string(m));
    for (std::size_t i = 0; i < res.xr_e.cols(); ++i) {
        std::vector<double> row{res.t(i)};
        for (std::size_t b = 0; b < res.unobserved.size(); ++b)
            row.push_back(res.xr_e(b, i));
        resid.rows.push_back(std::move(row));
    }
    io::write_csv_file((dir / "residuals.csv").string(), resid);
    for (auto const& [m, f] : res.disturbances) {
        io::CsvTable t;
        t.header = {"t", "F_" + std::to_string(m)};
        for (std::size_t k = 0; k < f.size(); ++k)
            t.rows.push_back({res.t(res.first + k), f[k]});
        io::write_csv_file((dir / ("disturbance_" + std::to_string(m) + ".csv")).string(), t);
    }
    return res;
}

// ------------------------------------------------------ reference scenarios

/// Relative L2 error of reconstructed F_m against the configured profile over
/// (t_bar, t_last] (or (T0, t_last] without detection).
inline double reconstruction_error(ScenarioConfig const& c, IdentificationResult const& r, Vertex m, double t_bar)
{
    auto it = r.disturbances.find(m);
    if (it == r.disturbances.end())
        return std::numeric_limits<double>::infinity();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
        double const t = r.t(r.first + k);
        if (t <= t_bar)
            continue;
        double truth = 0.0;
        for (auto const& d : c.disturbances)
            if (d.vertex == m)
                truth += d.value(t);
        num += (it->second[k] - truth) * (it->second[k] - truth);
        den += truth * truth;
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline json five_vertex_network_json()
{
    return {{"n", 5}, {"edges", {{1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 5}}}};
}

/// The five-vertex experiments: zero initial state, T = 100, T0 = 10,
/// eta = 0.1, dt = 0.1, F = sin(pi (t - T0) / T) at `source`.
inline ScenarioConfig reference_scenario(VertexSet observed, Vertex source, std::uint64_t seed)
{
    json j = {{"graph", five_vertex_network_json()},
              {"eta", 0.1},
              {"grid", {{"T", 100.0}, {"dt", 0.1}, {"T0", 10.0}}},
              {"disturbances", json::array({{{"vertex", source},
                                             {"kind", "sine_halfperiod"},
                                             {"amplitude", 1.0},
                                             {"onset", 10.0},
                                             {"duration", 100.0}}})},
              {"observation_set", observed},
              {"identification", {{"alpha", 1e-2}, {"L", 8}}},
              {"noise", {{"std", 0.0}, {"seed", seed}}}};
    return parse_config(j);
}

struct ReferenceCase {
    std::string name;
    ScenarioConfig config;
    Vertex source = 0;
    DetectionOutput detection;
    IdentificationResult result;
    double error = 0.0;
    double max_other = 0.0;  ///< max |F| reconstructed at unobserved vertices other than the source
};

inline ReferenceCase run_reference_case(std::string name, ScenarioConfig cfg, Vertex source, fs::path const& root)
{
    ReferenceCase pc;
    pc.name = std::move(name);
    pc.source = source;
    auto const dir = (root / pc.name).string();
    auto const sim = run_simulate(cfg, dir);
    pc.detection = run_detect(cfg, sim.observations, dir);
    pc.result = run_identify(cfg, sim.observations, pc.detection, dir);
    double const from = pc.detection.report.detected ? pc.detection.report.t_bar : cfg.T0;
    pc.error = reconstruction_error(cfg, pc.result, source, from);
    for (auto const& [m, f] : pc.result.disturbances)
        if (m != source)
            pc.max_other = std::max(pc.max_other, max_abs(f));
    pc.config = std::move(cfg);
    return pc;
}

/// Runs the dominantly absorbent case (S = {1,4,5}, source at 2) and the three
/// absorbent cases (S = {1,4}, sources at 2, 3, 5); writes per-case outputs
/// and summary.csv / summary.json under out_dir.
inline std::vector<ReferenceCase> run_reference_suite(std::string const& out_dir, std::uint64_t seed = 0)
{
    auto const root = prepare_output_dir(out_dir);
    std::vector<ReferenceCase> cases;
    cases.push_back(run_reference_case("da_source2", reference_scenario({1, 4, 5}, 2, seed), 2, root));
    for (Vertex s : {2, 3, 5})
        cases.push_back(
            run_reference_case("absorbent_source" + std::to_string(s), reference_scenario({1, 4}, s, seed), s, root));

    json summary = json::array();
    std::string csv = "case,mode,observation_set,source,detected,t_bar,localized,relative_l2_error,max_abs_other\n";
    for (auto const& pc : cases) {
        auto const& r = pc.result;
        std::string s, loc;
        for (Vertex v : pc.config.observed)
            s += (s.empty() ? "" : " ") + std::to_string(v);
        for (Vertex v : r.localized)
            loc += (loc.empty() ? "" : " ") + std::to_string(v);
        csv += pc.name + "," + to_string(r.mode) + "," + s + "," + std::to_string(pc.source) + "," +
               (pc.detection.report.detected ? "true" : "false") + "," + io::format_double(pc.detection.report.t_bar) +
               "," + loc + "," + io::format_double(pc.error) + "," + io::format_double(pc.max_other) + "\n";
        summary.push_back({{"case", pc.name},
                           {"mode", to_string(r.mode)},
                           {"observation_set", pc.config.observed},
                           {"source", pc.source},
                           {"detected", pc.detection.report.detected},
                           {"t_bar", pc.detection.report.t_bar},
                           {"localized", r.localized},
                           {"relative_l2_error", pc.error},
                           {"max_abs_other", pc.max_other}});
    }
    write_json_file(root / "summary.json", summary);
    std::ofstream os(root / "summary.csv", std::ios::binary);
    if (!os)
        throw Error("cannot write summary.csv in '" + out_dir + "'");
    os << csv;
    return cases;
}

}  // namespace gwave::cli
