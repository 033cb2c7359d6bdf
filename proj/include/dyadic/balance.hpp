#pragma once

// Balancing dynamics for a fixed matching: alpha' = -e(alpha), where
//
//   e_i = alpha_i - (w_ij + beta_{i\j} - beta_{j\i}) / 2   for (i, j) in M
//   e_k = alpha_k                                           for unmatched k
//
// Each agent reads its partner's allocation and the allocations of its own and
// its partner's other neighbors (2-hop information).

#include "dyadic/graph.hpp"
#include "dyadic/stable.hpp"
#include "dyadic/trajectory.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

/// Balancing errors, indexed by vertex.
using BalanceErrors = std::vector<double>;

/// Throws std::invalid_argument when alloc has the wrong length or the
/// matching belongs to a graph of another size.
[[nodiscard]] BalanceErrors balancing_error(const WeightedGraph& g, const Matching& m,
                                            std::span<const double> alloc);

/// -balancing_error(g, m, alloc).
[[nodiscard]] std::vector<double> balance_rhs(const WeightedGraph& g, const Matching& m,
                                              std::span<const double> alloc);

/// Gap between the best and the runner-up among the offers w_ik - alloc_k
/// that i sees from neighbors other than `exclude`, with declining every
/// offer (value 0) counted as one more candidate. Zero on ties; nullopt when
/// i has no neighbor besides `exclude`.
[[nodiscard]] std::optional<double> option_gap(const WeightedGraph& g,
                                               std::span<const double> alloc, Vertex i,
                                               std::optional<Vertex> exclude);

/// Radius 0.01 * (1 + gap) within which a balanced allocation is locally
/// stable, gap being the smallest positive option_gap of a matched agent
/// against its partner (0 when no agent has a positive gap).
[[nodiscard]] double locality_radius(const WeightedGraph& g, const Matching& m,
                                     std::span<const double> alloc);

/// Lyapunov level 0.5 * max_i e_i^2.
[[nodiscard]] double balance_level(std::span<const double> errors);

struct BalanceOptions {
    double dt = 1e-3;
    double t_final = 100.0;
    double tol = 1e-4;  ///< |e|_inf below this counts as converged
    double max_norm = 1e9;
    SamplingOptions sampling{};
};

struct BalancedRun {
    RunStatus status = RunStatus::Undecided;
    std::string message;
    Outcome outcome;
    BalanceErrors errors;  ///< at the final state
    double error_norm = 0.0;
    /// Largest one-step increase of the Lyapunov level over the whole run
    /// (zero when the level never rose).
    double max_level_increase = 0.0;
    double t_end = 0.0;
    /// Columns t, alpha_b_<i>, e_<i>, V, pair_<i>_<j> (alpha_i + alpha_j - w_ij
    /// per matched pair).
    Trajectory trajectory;
};

/// Explicit Euler on balance_rhs. Divergence is reported as status Diverged.
[[nodiscard]] BalancedRun run_balanced(const WeightedGraph& g, const Matching& m,
                                       std::vector<double> alpha0, const BalanceOptions& options);

}  // namespace dyadic
