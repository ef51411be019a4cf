#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gwave/cli/commands.hpp"

namespace {

struct Args {
    std::string config;
    std::string out;
    std::string observations;
    std::string epsilon;
    std::string mode;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

gwave::cli::ScenarioConfig load(Args const& a)
{
    auto c = gwave::cli::load_config(a.config);
    if (a.seed)
        c.seed = *a.seed;
    if (!a.mode.empty())
        c.identification.mode = gwave::parse_identification_mode(a.mode);
    if (a.epsilon == "auto") {
        c.epsilon.reset();
    } else if (!a.epsilon.empty()) {
        try {
            c.epsilon = std::stod(a.epsilon);
        } catch (std::exception const&) {
            throw gwave::cli::ConfigError("--epsilon must be a number or 'auto'");
        }
    }
    if (!a.out.empty())
        c.output_dir = a.out;
    gwave::cli::validate(c);
    return c;
}

gwave::Observations observations_for(gwave::cli::ScenarioConfig const& c, Args const& a)
{
    if (!a.observations.empty())
        return gwave::cli::load_observations(c, a.observations);
    return gwave::cli::simulate_scenario(c).observations;
}

void print(Args const& a, gwave::cli::json const& j)
{
    if (!a.quiet)
        std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace gwave;
    CLI::App app{"gwave: disturbance detection and identification on damped graph wave networks"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config,-c", a.config, "scenario JSON file");
        if (needs_config)
            opt->required();
        sub->add_option("--out,-o", a.out, "output directory (overrides outputs.directory)");
        sub->add_option("--seed", a.seed, "noise / random initial state seed");
        sub->add_flag("--quiet,-q", a.quiet, "suppress stdout report");
    };

    auto* analyze = app.add_subcommand("analyze-graph", "spectrum, strategic / absorbent / DA verdicts, joints");
    add_common(analyze, true);
    auto* absorb = app.add_subcommand("find-absorbent", "spanning-tree absorbent set for the configured graph");
    add_common(absorb, true);
    auto* sim = app.add_subcommand("simulate", "forward simulation, observations and ground truth");
    add_common(sim, true);
    auto* det = app.add_subcommand("detect", "healthy state and first-detection time");
    add_common(det, true);
    det->add_option("--observations", a.observations, "observations.csv (default: simulate from config)");
    det->add_option("--epsilon", a.epsilon, "threshold, number or 'auto'");
    auto* ident = app.add_subcommand("identify", "residuals, localization and disturbance reconstruction");
    add_common(ident, true);
    ident->add_option("--observations", a.observations, "observations.csv (default: simulate from config)");
    ident->add_option("--epsilon", a.epsilon, "threshold, number or 'auto'");
    ident->add_option("--mode", a.mode, "auto | da | absorbent");
    auto* repro = app.add_subcommand("reproduce-paper", "five-vertex reference experiments");
    add_common(repro, false);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*repro) {
            std::string const dir = a.out.empty() ? "out/reproduce" : a.out;
            auto const cases = cli::run_reference_suite(dir, a.seed.value_or(0));
            if (!a.quiet)
                for (auto const& pc : cases) {
                    std::string loc;
                    for (Vertex v : pc.result.localized)
                        loc += " " + std::to_string(v);
                    std::printf("%-20s mode=%-9s t_bar=%-8.3f localized={%s } error=%.4g\n", pc.name.c_str(),
                                to_string(pc.result.mode), pc.detection.report.t_bar, loc.c_str(), pc.error);
                }
            return 0;
        }
        auto const c = load(a);
        if (*analyze) {
            print(a, cli::analyze_graph(c));
        } else if (*absorb) {
            print(a, cli::find_absorbent(c));
        } else if (*sim) {
            auto const out = cli::run_simulate(c, c.output_dir);
            print(a, {{"output_dir", c.output_dir}, {"samples", out.trajectory.samples()}});
        } else if (*det) {
            auto const d = cli::run_detect(c, observations_for(c, a), c.output_dir);
            auto j = cli::detection_json(d);
            j.erase("residual_trace");
            print(a, j);
        } else if (*ident) {
            auto const obs = observations_for(c, a);
            auto const d = cli::run_detect(c, obs, c.output_dir);
            auto const r = cli::run_identify(c, obs, d, c.output_dir);
            print(a, {{"mode", to_string(r.mode)},
                      {"status", r.status},
                      {"localized", r.localized},
                      {"t_bar", d.report.detected ? cli::json(d.report.t_bar) : cli::json(nullptr)},
                      {"output_dir", c.output_dir}});
        }
    } catch (InvalidArgument const& e) {
        std::fprintf(stderr, "gwave: invalid input: %s\n", e.what());
        return 2;
    } catch (PreconditionError const& e) {
        std::fprintf(stderr, "gwave: precondition failed: %s\n", e.what());
        return 3;
    } catch (NumericalError const& e) {
        std::fprintf(stderr, "gwave: numerical failure: %s\n", e.what());
        return 4;
    } catch (std::exception const& e) {
        std::fprintf(stderr, "gwave: %s\n", e.what());
        return 1;
    }
    return 0;
}
