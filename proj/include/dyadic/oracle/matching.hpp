#pragma once

#include "dyadic/oracle/exact.hpp"

#include <cstddef>
#include <vector>

namespace dyadic::oracle {

inline constexpr std::size_t kMaxEnumerationEdges = 24;
inline constexpr std::size_t kMaxRelaxationEdges = 14;

/// All matchings, the empty one included, each as sorted edge ids.
/// Throws SizeError above kMaxEnumerationEdges edges.
[[nodiscard]] std::vector<EdgeSet> enumerate_matchings(const ExactGraph& g);

struct MwmResult {
    EdgeSet edges;  ///< the first maximizer in enumeration order
    Rational weight;
    bool unique = false;
    std::size_t maximizers = 0;
};

[[nodiscard]] MwmResult max_weight_matching(const ExactGraph& g);

struct RelaxationResult {
    Rational value;
    /// Maximizer with entries in {0, 1/2, 1}; integral whenever one exists.
    RationalVector witness;
    bool integral = false;
    /// The optimum is attained at a single point. Every vertex of the
    /// relaxation is half-integral, so one maximizing half-integral point
    /// means the whole optimal face is that point.
    bool unique = false;
};

/// Optimum of max sum w_e m_e s.t. sum_{e at i} m_e <= 1, m >= 0, found by
/// enumerating half-integral points. Throws SizeError above
/// kMaxRelaxationEdges edges.
[[nodiscard]] RelaxationResult lp_relaxation_optimum(const ExactGraph& g);

}  // namespace dyadic::oracle
