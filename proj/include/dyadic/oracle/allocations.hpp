#pragma once

#include "dyadic/oracle/exact.hpp"
#include "dyadic/oracle/matching.hpp"

#include <optional>
#include <vector>

namespace dyadic::oracle {

/// A feasible point of { alpha >= 0 : alpha_i + alpha_j >= w_ij on every edge,
/// alpha_i + alpha_j = w_ij on M, alpha_k = 0 off M }, i.e. a stable
/// allocation supported by M. Every such point attains the dual objective
/// weight(M). nullopt when the set is empty. Found by visiting the vertices of
/// the set in the coordinates t_p = alpha of the lower endpoint of each
/// matched pair p.
[[nodiscard]] std::optional<RationalVector> stable_allocation(const ExactGraph& g,
                                                              const EdgeSet& m);

/// A convex set of balanced allocations, given by its vertices.
struct BalancedPiece {
    std::vector<RationalVector> vertices;  ///< sorted, at least two
};

/// Max-norm distance from x to the convex hull of the piece's vertices, by an
/// exact LP over convex weights.
[[nodiscard]] Rational distance_to_piece(const BalancedPiece& piece, const RationalVector& x);

struct BalancedSolutions {
    std::vector<RationalVector> allocations;  ///< isolated solutions, sorted
    std::vector<BalancedPiece> pieces;        ///< continua of solutions
    /// Outside-option assignments whose linear system was singular.
    std::size_t singular_assignments = 0;
};

inline constexpr std::size_t kMaxBalancedAssignments = 1'000'000;

/// Every solution of e(alpha) = 0 for the matching m. For each matched pair
/// (i, j) the outside option of i and of j is fixed to none or one specific
/// other neighbor; this turns e(alpha) = 0 into a linear system. Its solution
/// set, intersected with the inequalities that make the fixed options the
/// actual maximizers, is a polytope; its vertices are enumerated. A polytope
/// with one vertex is an isolated solution, otherwise it is reported as a
/// piece. Throws SizeError above kMaxBalancedAssignments assignments.
[[nodiscard]] BalancedSolutions balanced_allocations(const ExactGraph& g, const EdgeSet& m);

struct NashOracleResult {
    MwmResult mwm;
    RelaxationResult relaxation;
    std::vector<RationalVector> balanced;  ///< on mwm.edges, before the filter
    std::vector<BalancedPiece> balanced_pieces;
    std::vector<RationalVector> nash;      ///< balanced and stable
    std::vector<BalancedPiece> nash_pieces;
    std::size_t singular_assignments = 0;
    /// A stable outcome exists (integral relaxation) yet some balanced
    /// allocation on the maximum weight matching is not stable. A piece is
    /// stable iff all of its vertices are.
    bool unstable_balanced = false;
};

[[nodiscard]] NashOracleResult nash_oracle(const ExactGraph& g);

}  // namespace dyadic::oracle
