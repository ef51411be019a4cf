#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwave/dynamics/source.hpp"
#include "gwave/dynamics/trajectory.hpp"
#include "gwave/graph/graph.hpp"
#include "gwave/identification/pipeline.hpp"
#include "gwave/io/csv.hpp"

namespace gwave::cli {

using json = nlohmann::json;

/// Bad or inconsistent scenario file (exit code 2).
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// f_v(t) = offset + amplitude sin(omega t + phase).
struct SourceTerm {
    Vertex vertex = 1;
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    double offset = 0.0;
};

struct SourceSpec {
    enum class Kind { zero, samples, parametric } kind = Kind::zero;
    std::string file;  ///< csv with columns t, F_1..F_N
    std::vector<SourceTerm> terms;
};

struct ScenarioConfig {
    int n = 0;
    std::vector<Edge> edges;
    double eta = 0.1;
    double T = 100.0, dt = 0.1, T0 = 10.0;
    SourceSpec source;
    Vector x0, v0;              ///< empty means zero
    double random_ic = 0.0;     ///< > 0: uniform(-s, s) initial state drawn from the seed
    std::vector<DisturbanceProfile> disturbances;
    VertexSet observed;
    std::optional<double> epsilon;  ///< empty means auto
    std::size_t window = 1;
    IdentificationOptions identification;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    std::size_t substeps = 10;
    bool assert_c1 = true;
    std::string output_dir = "out";
    std::filesystem::path base_dir;  ///< relative file paths resolve here

    [[nodiscard]] Graph graph() const { return Graph(n, edges); }
    [[nodiscard]] TimeGrid grid() const { return TimeGrid(T, dt, T0); }
    [[nodiscard]] VertexPartition partition() const { return VertexPartition(n, observed); }
};

namespace detail {

template <class T>
T get_or(json const& j, char const* key, T fallback)
{
    if (!j.contains(key) || j.at(key).is_null())
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (json::exception const& e) {
        throw ConfigError(std::string("config: field '") + key + "': " + e.what());
    }
}

inline json const& require_field(json const& j, char const* key, char const* where)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(std::string("config: missing field '") + key + "' in " + where);
    return j.at(key);
}

inline std::string resolve(std::filesystem::path const& base, std::string const& p)
{
    std::filesystem::path const path(p);
    return path.is_absolute() || base.empty() ? p : (base / path).string();
}

inline DisturbanceKind parse_kind(std::string const& s)
{
    if (s == "sine_halfperiod")
        return DisturbanceKind::sine_halfperiod;
    if (s == "step")
        return DisturbanceKind::step;
    if (s == "samples")
        return DisturbanceKind::samples;
    throw ConfigError("config: unknown disturbance kind '" + s + "'");
}

inline PhiForm parse_phi(std::string const& s)
{
    if (s == "exact")
        return PhiForm::exact;
    if (s == "affine")
        return PhiForm::affine;
    throw ConfigError("config: identification.phi must be 'exact' or 'affine'");
}

}  // namespace detail

inline void validate(ScenarioConfig const& c)
{
    try {
        (void)c.graph();
        (void)c.grid();
        (void)c.partition();
    } catch (InvalidArgument const& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(c.eta > 0))
        throw ConfigError("config: eta must be positive");
    if (c.observed.empty())
        throw ConfigError("config: observation_set is empty");
    if (!c.x0.empty() && c.x0.size() != static_cast<std::size_t>(c.n))
        throw ConfigError("config: initial.x0 must have n entries");
    if (!c.v0.empty() && c.v0.size() != static_cast<std::size_t>(c.n))
        throw ConfigError("config: initial.v0 must have n entries");
    if (c.noise_std < 0)
        throw ConfigError("config: noise.std must be non-negative");
    if (c.window < 1)
        throw ConfigError("config: detection.window must be >= 1");
    if (c.epsilon && !(*c.epsilon > 0))
        throw ConfigError("config: detection.epsilon must be positive or \"auto\"");
    if (c.substeps < 1)
        throw ConfigError("config: simulation.substeps must be >= 1");
    if (!(c.identification.alpha > 0))
        throw ConfigError("config: identification.alpha must be positive");
    auto const part = c.partition();
    for (auto const& d : c.disturbances) {
        if (d.vertex < 1 || d.vertex > c.n)
            throw ConfigError("config: disturbance vertex " + std::to_string(d.vertex) + " outside the graph");
        if (part.is_observed(d.vertex))
            throw ConfigError("config: disturbance vertex " + std::to_string(d.vertex) +
                              " is observed; disturbances must act on unobserved vertices");
        if (c.assert_c1 && d.onset < c.T0 - 1e-12)
            throw ConfigError("config: disturbance onset " + io::format_double(d.onset) +
                              " precedes T0 while assert_c1 is set");
    }
    for (auto const& t : c.source.terms)
        if (t.vertex < 1 || t.vertex > c.n)
            throw ConfigError("config: source term vertex outside the graph");
}

inline ScenarioConfig parse_config(json const& j, std::filesystem::path const& base_dir = {})
{
    if (!j.is_object())
        throw ConfigError("config: top level must be an object");
    ScenarioConfig c;
    c.base_dir = base_dir;
    try {
        auto const& g = detail::require_field(j, "graph", "config");
        c.n = detail::require_field(g, "n", "graph").get<int>();
        for (auto const& e : detail::require_field(g, "edges", "graph")) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("config: each edge must be a [u, v] pair");
            c.edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        c.eta = detail::get_or(j, "eta", c.eta);
        if (j.contains("grid")) {
            auto const& gr = j.at("grid");
            c.T = detail::get_or(gr, "T", c.T);
            c.dt = detail::get_or(gr, "dt", c.dt);
            c.T0 = detail::get_or(gr, "T0", c.T0);
        }
        if (j.contains("source")) {
            auto const& s = j.at("source");
            auto const kind = detail::get_or<std::string>(s, "kind", "zero");
            if (kind == "zero") {
                c.source.kind = SourceSpec::Kind::zero;
            } else if (kind == "samples") {
                c.source.kind = SourceSpec::Kind::samples;
                c.source.file = detail::resolve(base_dir, detail::require_field(s, "file", "source").get<std::string>());
            } else if (kind == "parametric") {
                c.source.kind = SourceSpec::Kind::parametric;
                for (auto const& t : detail::require_field(s, "terms", "source")) {
                    SourceTerm term;
                    term.vertex = detail::require_field(t, "vertex", "source term").get<int>();
                    term.amplitude = detail::get_or(t, "amplitude", 0.0);
                    term.omega = detail::get_or(t, "omega", 0.0);
                    term.phase = detail::get_or(t, "phase", 0.0);
                    term.offset = detail::get_or(t, "offset", 0.0);
                    c.source.terms.push_back(term);
                }
            } else {
                throw ConfigError("config: source.kind must be zero, samples or parametric");
            }
        }
        if (j.contains("initial")) {
            auto const& ic = j.at("initial");
            c.x0 = detail::get_or(ic, "x0", Vector{});
            c.v0 = detail::get_or(ic, "v0", Vector{});
            c.random_ic = detail::get_or(ic, "random", 0.0);
        }
        for (auto const& d : j.value("disturbances", json::array())) {
            DisturbanceProfile p;
            p.vertex = detail::require_field(d, "vertex", "disturbance").get<int>();
            p.kind = detail::parse_kind(detail::get_or<std::string>(d, "kind", "sine_halfperiod"));
            p.amplitude = detail::get_or(d, "amplitude", 1.0);
            p.onset = detail::get_or(d, "onset", c.T0);
            p.duration = detail::get_or(d, "duration", c.T);
            if (p.kind == DisturbanceKind::samples) {
                auto const path = detail::resolve(base_dir, detail::require_field(d, "file", "disturbance").get<std::string>());
                auto const t = io::read_csv_file(path);
                if (t.rows.size() < 2 || t.header.size() < 2)
                    throw ConfigError("config: disturbance samples file '" + path + "' needs columns t, F and 2+ rows");
                p.sample_dt = t.rows[1][0] - t.rows[0][0];
                for (auto const& r : t.rows)
                    p.samples.push_back(r[1]);
            }
            c.disturbances.push_back(p);
        }
        c.observed = detail::require_field(j, "observation_set", "config").get<VertexSet>();
        std::sort(c.observed.begin(), c.observed.end());
        if (j.contains("detection")) {
            auto const& d = j.at("detection");
            if (d.contains("epsilon") && !(d.at("epsilon").is_string() && d.at("epsilon") == "auto"))
                c.epsilon = d.at("epsilon").get<double>();
            c.window = detail::get_or<std::size_t>(d, "window", c.window);
        }
        if (j.contains("identification")) {
            auto const& id = j.at("identification");
            auto& o = c.identification;
            o.mode = parse_identification_mode(detail::get_or<std::string>(id, "mode", "auto"));
            o.L = detail::get_or<std::size_t>(id, "L", o.L);
            o.alpha = detail::get_or(id, "alpha", o.alpha);
            o.t_bar_k_steps = detail::get_or<std::size_t>(id, "t_bar_k_steps", o.t_bar_k_steps);
            o.rho = detail::get_or(id, "rho", o.rho);
            o.onset_window = detail::get_or<std::size_t>(id, "onset_window", o.onset_window);
            o.phi = detail::parse_phi(detail::get_or<std::string>(id, "phi", "exact"));
            o.passivity_selection = detail::get_or(id, "passivity_selection", o.passivity_selection);
            o.max_sources = detail::get_or<std::size_t>(id, "max_sources", o.max_sources);
            o.gamma = detail::get_or(id, "gamma", o.gamma);
        }
        if (j.contains("noise")) {
            c.noise_std = detail::get_or(j.at("noise"), "std", 0.0);
            c.seed = detail::get_or<std::uint64_t>(j.at("noise"), "seed", 0);
        }
        if (j.contains("simulation"))
            c.substeps = detail::get_or<std::size_t>(j.at("simulation"), "substeps", c.substeps);
        c.assert_c1 = detail::get_or(j, "assert_c1", c.assert_c1);
        if (j.contains("outputs"))
            c.output_dir = detail::get_or<std::string>(j.at("outputs"), "directory", c.output_dir);
    } catch (json::exception const& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (ConfigError const&) {
        throw;
    } catch (InvalidArgument const& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(c);
    return c;
}

inline ScenarioConfig load_config(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(is);
    } catch (json::parse_error const& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    return parse_config(j, std::filesystem::path(path).parent_path());
}

/// Known source F^sour as a callable (empty for the zero source).
inline SourceFunction known_source(ScenarioConfig const& c)
{
    switch (c.source.kind) {
    case SourceSpec::Kind::zero:
        return {};
    case SourceSpec::Kind::parametric:
        return [terms = c.source.terms](double t, std::span<double> f) {
            std::fill(f.begin(), f.end(), 0.0);
            for (auto const& s : terms)
                f[static_cast<std::size_t>(s.vertex - 1)] += s.offset + s.amplitude * std::sin(s.omega * t + s.phase);
        };
    case SourceSpec::Kind::samples: {
        auto const t = io::read_csv_file(c.source.file);
        if (t.header.size() != static_cast<std::size_t>(c.n) + 1 || t.rows.size() < 2)
            throw ConfigError("source samples '" + c.source.file + "' must have columns t, F_1..F_n");
        DenseMatrix table(static_cast<std::size_t>(c.n), t.rows.size());
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            for (std::size_t k = 0; k < table.rows(); ++k)
                table(k, i) = t.rows[i][k + 1];
        return sampled_source(std::move(table), t.rows[1][0] - t.rows[0][0]);
    }
    }
    return {};
}

}  // namespace gwave::cli
