#pragma once

#include "dyadic/oracle/exact.hpp"

#include <cstddef>
#include <vector>

namespace dyadic::oracle {

/// min c^T x  s.t.  A x = b, x >= 0, in exact arithmetic.
struct ExactLp {
    std::vector<RationalVector> A;  ///< rows
    RationalVector b;
    RationalVector c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct ExactLpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector x;
    /// Dual certificate in the convention A^T z + c >= 0, (A^T z + c)^T x = 0.
    RationalVector z;
};

inline constexpr std::size_t kMaxBasisCandidates = 200'000;

/// Solves by enumerating every basis: redundant rows are dropped, each
/// nonsingular column subset gives a basic solution, and a primal feasible
/// basis with nonnegative reduced costs certifies optimality. Throws SizeError
/// when the number of column subsets exceeds kMaxBasisCandidates and
/// std::invalid_argument on inconsistent dimensions.
[[nodiscard]] ExactLpSolution solve_standard_form(const ExactLp& lp);

}  // namespace dyadic::oracle
