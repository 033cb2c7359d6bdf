#pragma once

// Distributed dynamics for stable outcomes: the projected LP flow specialised
// to the dual of the matching relaxation with one slack per edge. Agent i owns
// alpha^s_i and, for every neighbor j > i, the edge states s_ij and m_ij.

#include "dyadic/graph.hpp"
#include "dyadic/lp.hpp"
#include "dyadic/trajectory.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

/// States of the stable dynamics. Edge vectors are indexed by EdgeId.
struct StableState {
    std::vector<double> alpha_s;
    std::vector<double> s;
    std::vector<double> m;

    [[nodiscard]] static StableState zeros(const WeightedGraph& g);
    /// Throws DimensionError on size mismatch.
    void check_shape(const WeightedGraph& g) const;
};

/// Time derivative of a StableState, same layout.
using StableRates = StableState;

[[nodiscard]] double f_alpha(const WeightedGraph& g, const StableState& st, Vertex i);
[[nodiscard]] double f_s(const WeightedGraph& g, const StableState& st, EdgeId e);

/// Projected vector field. Throws StateError if alpha_s or s has a negative
/// entry.
[[nodiscard]] StableRates stable_rhs(const WeightedGraph& g, const StableState& st);

/// The standard-form LP behind the dynamics, materialised densely:
/// x = (alpha_s, s), one row per edge (-alpha_u - alpha_v + s_e = -w_e),
/// multiplier z = m.
[[nodiscard]] LpProblem assemble_stable_lp(const WeightedGraph& g);
/// Same LP as a matrix-free operator (two incidences and one slack per row).
[[nodiscard]] OperatorLp stable_operator_lp(const WeightedGraph& g);
[[nodiscard]] LpState to_lp_state(const StableState& st);
[[nodiscard]] StableState from_lp_state(const WeightedGraph& g, const LpState& s);
[[nodiscard]] double stable_kkt_residual(const WeightedGraph& g, const StableState& st);

/// Edges with |m_e - 1| < threshold; nullopt ("undecided") when two such edges
/// share a vertex.
[[nodiscard]] std::optional<Matching> extract_matching(const WeightedGraph& g,
                                                       std::span<const double> m,
                                                       double threshold);

/// True when some m_e is farther than threshold from both 0 and 1.
[[nodiscard]] bool has_fractional_state(std::span<const double> m, double threshold);

enum class RunStatus { Converged, Undecided, Unsettled, Diverged };
[[nodiscard]] const char* to_string(RunStatus s);

struct StableOptions {
    double dt = 1e-3;
    double t_final = 100.0;
    double threshold = 0.25;
    double tol = 1e-3;  ///< stability/validity tolerance for a converged verdict
    double max_norm = 1e9;
    bool early_stop = true;
    double stop_rate = 1e-7;
    std::size_t stop_window = 1000;
    SamplingOptions sampling{};
};

struct StableRun {
    RunStatus status = RunStatus::Undecided;
    std::string message;
    StableState final_state;
    std::optional<Matching> matching;
    std::vector<double> alloc;  ///< final alpha^s
    double stability_residual = 0.0;
    double kkt_residual = 0.0;
    bool fractional = false;
    double t_end = 0.0;
    std::size_t steps = 0;
    /// Columns t, alpha_s_<i>, s_<i>_<j>, m_<i>_<j>, kkt_residual, stab_residual.
    Trajectory trajectory;
};

[[nodiscard]] StableRun run_stable(const WeightedGraph& g, StableState s0,
                                   const StableOptions& options);

namespace detail {
/// Fills `out` with the projected rates; the hot loop of every stable run.
void stable_rates_into(const WeightedGraph& g, const StableState& st, StableRates& out);
/// Projected rates evaluated on `probe`, projecting on the zero pattern of
/// `actual`. Used by the perturbed cascade.
void stable_rates_into(const WeightedGraph& g, const StableState& probe,
                       const StableState& actual, StableRates& out);
std::vector<std::string> stable_columns(const WeightedGraph& g, const std::string& alpha_name);
double max_abs(const StableRates& r);
/// Euler step plus clamp of alpha_s and s onto the nonnegative orthant.
void euler_step(StableState& st, const StableRates& r, double dt);
}  // namespace detail

}  // namespace dyadic
