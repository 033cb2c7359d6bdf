#include "dyadic/oracle/lp_exact.hpp"

#include <string>

namespace dyadic::oracle {

namespace {

double binomial(std::size_t n, std::size_t k) {
    double out = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return out;
}

// Indices of a maximal set of linearly independent rows of [A | b]'s A part.
// Sets `consistent` to false when a dependent row contradicts its rhs.
std::vector<std::size_t> independent_rows(const ExactLp& lp, bool& consistent) {
    const std::size_t n = lp.c.size();
    std::vector<RationalVector> basis;  // reduced rows, each with a pivot
    RationalVector basis_rhs;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> keep;
    consistent = true;
    for (std::size_t r = 0; r < lp.A.size(); ++r) {
        RationalVector row = lp.A[r];
        Rational rhs = lp.b[r];
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Rational f = row[pivots[k]];
            if (f == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                row[j] -= f * basis[k][j];
            }
            rhs -= f * basis_rhs[k];
        }
        std::size_t pivot = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot == n) {
            if (rhs != 0) {
                consistent = false;
            }
            continue;
        }
        const Rational p = row[pivot];
        for (auto& v : row) {
            v /= p;
        }
        rhs /= p;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Rational f = basis[k][pivot];
            if (f == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                basis[k][j] -= f * row[j];
            }
            basis_rhs[k] -= f * rhs;
        }
        basis.push_back(std::move(row));
        basis_rhs.push_back(rhs);
        pivots.push_back(pivot);
        keep.push_back(r);
    }
    return keep;
}

}  // namespace

ExactLpSolution solve_standard_form(const ExactLp& lp) {
    const std::size_t m = lp.b.size();
    const std::size_t n = lp.c.size();
    if (lp.A.size() != m) {
        throw std::invalid_argument("A and b disagree on the row count");
    }
    for (const auto& row : lp.A) {
        if (row.size() != n) {
            throw std::invalid_argument("A and c disagree on the column count");
        }
    }
    ExactLpSolution out;
    bool consistent = true;
    const auto rows = independent_rows(lp, consistent);
    if (!consistent) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    const std::size_t r = rows.size();
    if (binomial(n, r) > static_cast<double>(kMaxBasisCandidates)) {
        throw SizeError("basis enumeration over " + std::to_string(n) + " choose " +
                        std::to_string(r) + " column subsets is too large");
    }

    bool feasible = false;
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) {
        cols[i] = i;
    }
    do {
        std::vector<RationalVector> B(r, RationalVector(r));
        std::vector<RationalVector> Bt(r, RationalVector(r));
        RationalVector rhs(r);
        RationalVector cb(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                B[i][j] = lp.A[rows[i]][cols[j]];
                Bt[j][i] = B[i][j];
            }
            rhs[i] = lp.b[rows[i]];
            cb[i] = lp.c[cols[i]];
        }
        const auto xb = solve_square(B, rhs);
        if (!xb) {
            continue;
        }
        bool nonneg = true;
        for (const auto& v : *xb) {
            nonneg = nonneg && v >= 0;
        }
        if (!nonneg) {
            continue;
        }
        feasible = true;
        const auto y = solve_square(Bt, cb);
        RationalVector reduced = lp.c;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                reduced[j] -= lp.A[rows[i]][j] * (*y)[i];
            }
        }
        bool dual_feasible = true;
        for (const auto& d : reduced) {
            dual_feasible = dual_feasible && d >= 0;
        }
        if (!dual_feasible) {
            continue;
        }
        out.status = LpStatus::Optimal;
        out.x.assign(n, Rational(0));
        out.value = 0;
        for (std::size_t j = 0; j < r; ++j) {
            out.x[cols[j]] = (*xb)[j];
            out.value += lp.c[cols[j]] * (*xb)[j];
        }
        out.z.assign(m, Rational(0));
        for (std::size_t i = 0; i < r; ++i) {
            out.z[rows[i]] = -(*y)[i];
        }
        return out;
    } while (r > 0 && next_combination(cols, n));

    if (r == 0) {
        // Only x = 0 is basic; covered above unless c has a negative entry.
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = feasible ? LpStatus::Unbounded : LpStatus::Infeasible;
    return out;
}

}  // namespace dyadic::oracle
