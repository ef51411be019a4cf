#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwave/detection.hpp"
#include "gwave/graph/observation_sets.hpp"
#include "gwave/identification/expansion.hpp"
#include "gwave/identification/localization.hpp"
#include "gwave/identification/reconstruction.hpp"
#include "gwave/identification/residuals.hpp"
#include "gwave/numerics/eigen.hpp"

namespace gwave {

enum class IdentificationMode { automatic, da, absorbent };

inline char const* to_string(IdentificationMode m)
{
    switch (m) {
    case IdentificationMode::automatic: return "auto";
    case IdentificationMode::da: return "da";
    case IdentificationMode::absorbent: return "absorbent";
    }
    return "?";
}

inline IdentificationMode parse_identification_mode(std::string const& s)
{
    if (s == "auto")
        return IdentificationMode::automatic;
    if (s == "da")
        return IdentificationMode::da;
    if (s == "absorbent")
        return IdentificationMode::absorbent;
    throw InvalidArgument("unknown identification mode '" + s + "' (expected auto, da or absorbent)");
}

struct IdentificationOptions {
    IdentificationMode mode = IdentificationMode::automatic;
    std::size_t L = 8;
    double alpha = 1e-2;
    /// Steps past the detection index; 0 means max(20, 2 window).
    std::size_t t_bar_k_steps = 0;
    double rho = 3.0;
    std::size_t onset_window = 10;
    PhiForm phi = PhiForm::exact;
    /// Passivity hypothesis testing in absorbent mode.
    bool passivity_selection = true;
    std::size_t max_sources = 2;
    double gamma = 10.0;
    /// Forces the end index of the absorbent-mode interval.
    std::optional<std::size_t> forced_ik;
};

struct HypothesisFit {
    VertexSet sources;
    double fit = 0.0;
};

struct IdentificationDiagnostics {
    std::size_t rank = 0;
    double condition = 0.0;
    double alpha = 0.0;
    std::size_t L = 0;
    double t_bar_k = 0.0;
    double fit_residual = 0.0;
    double screening_fit = 0.0;
    std::string selection;  ///< "da", "passivity" or "screening"
    std::vector<HypothesisFit> hypotheses;
};

struct IdentificationResult {
    IdentificationMode mode = IdentificationMode::da;
    VertexSet unobserved;
    DenseMatrix xr_e;  ///< N_E x (last + 2), rows ordered as `unobserved`
    VertexSet localized;
    std::string status;
    std::size_t first = 0;  ///< first reconstructed index (I0 + 1)
    std::size_t last = 0;   ///< last reconstructed index
    std::map<Vertex, Vector> disturbances;  ///< F(t_i), i = first..last
    LocalizationResult localization;
    IdentificationDiagnostics diagnostics;
    double dt = 0.0;

    [[nodiscard]] double t(std::size_t i) const { return static_cast<double>(i) * dt; }
};

namespace detail {

inline double condition_number(DenseMatrix const& a)
{
    auto const s = svd(a).singular;
    if (s.empty() || s.back() <= 0.0)
        return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

inline void combinations(VertexSet const& pool, std::size_t k, std::size_t start, VertexSet& cur,
                         std::vector<VertexSet>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        combinations(pool, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline IdentificationMode resolve_identification_mode(Graph const& g, VertexPartition const& part,
                                                      IdentificationMode requested)
{
    if (requested == IdentificationMode::da)
        return requested;
    if (requested == IdentificationMode::automatic && is_dominantly_absorbent(g, part))
        return IdentificationMode::da;
    if (!is_absorbent(g, part.observed()))
        throw PreconditionError("identify: the observation set is neither dominantly absorbent nor absorbent; "
                                "run find-absorbent to choose a usable set");
    return IdentificationMode::absorbent;
}

/// Reconstruction with a dominantly absorbent set: per-time pseudo-inverse of
/// Lap(S;E), then the disturbance at every vertex of E over (I0, I-1].
inline IdentificationResult identify_dominantly_absorbent(DenseMatrix const& lap, VertexPartition const& part,
                                                          Observations const& obs, StateTrajectory const& healthy,
                                                          double eta, TimeGrid const& grid,
                                                          IdentificationOptions const& opt = {})
{
    detail::require(grid.I >= grid.I0 + 3, "identify: record too short after T0");
    IdentificationResult res;
    res.mode = IdentificationMode::da;
    res.dt = grid.dt;
    res.unobserved = part.unobserved();
    auto const rd = residual_data(obs, healthy, part, lap, eta, 1, grid.I);
    res.xr_e = identify_da(rd, lap, part);
    res.first = grid.I0 + 1;
    res.last = grid.I - 1;

    auto const sub = submatrix_SE(lap, part);
    res.diagnostics.rank = matrix_rank(sub);
    res.diagnostics.condition = detail::condition_number(sub);
    res.diagnostics.selection = "da";
    res.diagnostics.t_bar_k = grid.t(res.last);

    res.localization = localize(res.xr_e, res.unobserved, grid.I0, res.last,
                                {.window = opt.onset_window, .rho = opt.rho});
    res.localized = res.localization.vertices;
    res.status = res.localization.status;

    auto const full = assemble_full_residual(rd, res.xr_e, part);
    for (Vertex m : res.unobserved)
        res.disturbances[m] =
            reconstruct_disturbance(full, lap, eta, grid.dt, grid.I0, res.last, static_cast<std::size_t>(m - 1), opt.phi);
    return res;
}

/// Reconstruction with an absorbent set: Legendre expansion of x^R_E fitted on
/// (T0, T_k], localization, then per-vertex disturbance reconstruction.
inline IdentificationResult identify_absorbent(DenseMatrix const& lap, VertexPartition const& part,
                                               Observations const& obs, StateTrajectory const& healthy, double eta,
                                               TimeGrid const& grid, DetectionReport const& det,
                                               IdentificationOptions const& opt = {})
{
    IdentificationResult res;
    res.mode = IdentificationMode::absorbent;
    res.dt = grid.dt;
    res.unobserved = part.unobserved();
    res.diagnostics.alpha = opt.alpha;
    res.diagnostics.L = opt.L;
    if (!det.detected && !opt.forced_ik) {
        res.status = "no disturbance detected";
        return res;
    }
    std::size_t ik = 0;
    if (opt.forced_ik) {
        ik = *opt.forced_ik;
    } else {
        std::size_t const extra = opt.t_bar_k_steps ? opt.t_bar_k_steps : std::max<std::size_t>(20, 2 * det.window);
        ik = det.i_bar + extra;
    }
    ik = std::min(ik, grid.I - 1);
    detail::require(ik >= grid.I0 + 3, "identify: reconstruction interval too short");
    res.first = grid.I0 + 1;
    res.last = ik;
    res.diagnostics.t_bar_k = grid.t(ik);

    auto const rd = residual_data(obs, healthy, part, lap, eta, grid.I0 + 1, ik);
    auto const basis = legendre_basis(opt.L, grid.t(ik), grid.dt, ik + 2);
    auto const sys = assemble_expansion_system(lap, part, basis, rd, grid.I0, ik);
    res.diagnostics.rank = matrix_rank(sys.C);
    res.diagnostics.condition = detail::condition_number(sys.C);

    auto const screening = solve_regularized(sys, opt.alpha, basis, grid.I0);
    res.diagnostics.screening_fit = screening.fit_residual;
    res.localization = localize(screening.xr_e, res.unobserved, grid.I0, ik,
                                {.window = opt.onset_window, .rho = opt.rho});
    res.xr_e = screening.xr_e;
    res.localized = res.localization.vertices;
    res.status = res.localization.status;
    res.diagnostics.fit_residual = screening.fit_residual;
    res.diagnostics.selection = "screening";
    if (res.localized.empty())
        return res;

    if (opt.passivity_selection) {
        std::size_t const max_h = std::min(opt.max_sources, res.unobserved.size());
        for (std::size_t h = 1; h <= max_h; ++h) {
            std::vector<VertexSet> hyps;
            VertexSet cur;
            detail::combinations(res.unobserved, h, 0, cur, hyps);
            std::optional<RegularizedSolution> best;
            VertexSet best_h;
            for (auto const& hyp : hyps) {
                VertexSet passive;
                for (Vertex m : res.unobserved)
                    if (std::find(hyp.begin(), hyp.end(), m) == hyp.end())
                        passive.push_back(m);
                auto const rows = passivity_rows(lap, part, basis, rd, eta, grid.I0, ik, passive);
                auto sol = solve_regularized(sys, opt.alpha, basis, grid.I0, &rows);
                res.diagnostics.hypotheses.push_back({hyp, sol.fit_residual});
                if (!best || sol.fit_residual < best->fit_residual) {
                    best = std::move(sol);
                    best_h = hyp;
                }
            }
            if (best && best->fit_residual <= opt.gamma * screening.fit_residual) {
                res.localized = best_h;
                res.xr_e = best->xr_e;
                res.diagnostics.fit_residual = best->fit_residual;
                res.diagnostics.selection = "passivity";
                res.status = "ok";
                break;
            }
        }
    }

    auto const full = assemble_full_residual(rd, res.xr_e, part);
    for (Vertex m : res.localized)
        res.disturbances[m] =
            reconstruct_disturbance(full, lap, eta, grid.dt, grid.I0, ik, static_cast<std::size_t>(m - 1), opt.phi);
    return res;
}

/// Picks the reconstruction mode (auto: dominantly absorbent first, then
/// absorbent) and runs it.
inline IdentificationResult identify(Graph const& g, VertexPartition const& part, Observations const& obs,
                                     StateTrajectory const& healthy, double eta, TimeGrid const& grid,
                                     DetectionReport const& det, IdentificationOptions const& opt = {})
{
    auto const lap = laplacian(g);
    auto const mode = resolve_identification_mode(g, part, opt.mode);
    if (mode == IdentificationMode::da)
        return identify_dominantly_absorbent(lap, part, obs, healthy, eta, grid, opt);
    return identify_absorbent(lap, part, obs, healthy, eta, grid, det, opt);
}

}  // namespace gwave
