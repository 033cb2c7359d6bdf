#include "dyadic/oracle/allocations.hpp"

#include "dyadic/oracle/lp_exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dyadic::oracle {

namespace {

// a . t + b >= 0 over the pair coordinates t.
struct Halfspace {
    RationalVector a;
    Rational b;
};

struct Affine {
    RationalVector coef;
    Rational constant;
};

bool satisfied(const Halfspace& h, const RationalVector& t) {
    Rational v = h.b;
    for (std::size_t k = 0; k < t.size(); ++k) {
        v += h.a[k] * t[k];
    }
    return v >= 0;
}

void check_balanced(const ExactGraph& g, const EdgeSet& m, const RationalVector& alloc) {
    if (!is_valid(g, m, alloc) || !is_balanced(g, m, alloc)) {
        throw std::logic_error("balanced-allocation search produced an unbalanced point");
    }
}

bool positive(const Halfspace& h, const RationalVector& t) {
    Rational v = h.b;
    for (std::size_t k = 0; k < t.size(); ++k) {
        v += h.a[k] * t[k];
    }
    return v > 0;
}

Halfspace difference(const Halfspace& x, const Halfspace& y) {
    Halfspace out{x.a, x.b - y.b};
    for (std::size_t k = 0; k < out.a.size(); ++k) {
        out.a[k] -= y.a[k];
    }
    return out;
}

// alpha as affine functions of one coordinate per matched pair p = (u, v):
// alpha_u = t_p, alpha_v = w_p - t_p, zero off the matching.
std::vector<Affine> pair_coordinates(const ExactGraph& g, const EdgeSet& m) {
    const std::size_t P = m.size();
    std::vector<Affine> alpha(g.num_vertices(), Affine{RationalVector(P), Rational(0)});
    for (std::size_t p = 0; p < P; ++p) {
        const auto& ed = g.edges()[m[p]];
        alpha[ed.u].coef[p] = 1;
        alpha[ed.v].coef[p] = -1;
        alpha[ed.v].constant = ed.w;
    }
    return alpha;
}

RationalVector evaluate(const std::vector<Affine>& alpha, const RationalVector& t) {
    RationalVector out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        out[i] = alpha[i].constant;
        for (std::size_t k = 0; k < t.size(); ++k) {
            out[i] += alpha[i].coef[k] * t[k];
        }
    }
    return out;
}

// Vertices of {x0 + D s} intersected with the halfspaces `cons` (over x).
// The last `box` constraints only bound the region; a vertex within distance
// 1 of them means the bound was wrong.
std::vector<RationalVector> polytope_vertices(const AffineSolution& aff,
                                              const std::vector<Halfspace>& cons,
                                              std::size_t box) {
    const std::size_t d = aff.directions.size();
    const std::size_t n = aff.x0.size();
    std::vector<Halfspace> param;
    std::vector<bool> is_box;
    for (std::size_t c = 0; c < cons.size(); ++c) {
        Halfspace h{RationalVector(d), cons[c].b};
        for (std::size_t i = 0; i < n; ++i) {
            h.b += cons[c].a[i] * aff.x0[i];
        }
        bool constant = true;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                h.a[k] += cons[c].a[i] * aff.directions[k][i];
            }
            constant = constant && h.a[k] == 0;
        }
        if (constant) {
            if (h.b < 0) {
                return {};
            }
            continue;
        }
        param.push_back(std::move(h));
        is_box.push_back(c + box >= cons.size());
    }
    if (param.size() < d) {
        throw std::logic_error("balanced-allocation region is unbounded");
    }
    std::vector<RationalVector> out;
    std::vector<std::size_t> pick(d);
    for (std::size_t k = 0; k < d; ++k) {
        pick[k] = k;
    }
    do {
        std::vector<RationalVector> A(d);
        RationalVector b(d);
        for (std::size_t k = 0; k < d; ++k) {
            A[k] = param[pick[k]].a;
            b[k] = -param[pick[k]].b;
        }
        const auto s = solve_square(std::move(A), std::move(b));
        if (!s || !std::all_of(param.begin(), param.end(),
                               [&](const Halfspace& h) { return satisfied(h, *s); })) {
            continue;
        }
        for (std::size_t c = 0; c < param.size(); ++c) {
            if (is_box[c] && !satisfied(Halfspace{param[c].a, param[c].b - 1}, *s)) {
                throw std::logic_error("balanced allocation reached the search box");
            }
        }
        RationalVector x = aff.x0;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += (*s)[k] * aff.directions[k][i];
            }
        }
        out.push_back(std::move(x));
    } while (next_combination(pick, param.size()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::optional<RationalVector> stable_allocation(const ExactGraph& g, const EdgeSet& m) {
    const auto partner = partners(g, m);
    const std::size_t n = g.num_vertices();
    const std::size_t P = m.size();

    const auto alpha = pair_coordinates(g, m);

    std::vector<Halfspace> cons;
    for (std::size_t i = 0; i < n; ++i) {
        if (partner[i]) {
            cons.push_back({alpha[i].coef, alpha[i].constant});
        }
    }
    for (const auto& ed : g.edges()) {
        Halfspace h{RationalVector(P), alpha[ed.u].constant + alpha[ed.v].constant - ed.w};
        bool constant = true;
        for (std::size_t k = 0; k < P; ++k) {
            h.a[k] = alpha[ed.u].coef[k] + alpha[ed.v].coef[k];
            constant = constant && h.a[k] == 0;
        }
        if (constant) {
            if (h.b < 0) {
                return std::nullopt;
            }
            continue;
        }
        cons.push_back(std::move(h));
    }

    auto to_alloc = [&](const RationalVector& t) { return evaluate(alpha, t); };
    if (P == 0) {
        return to_alloc({});
    }
    if (cons.size() > 40) {
        throw SizeError("stable allocation search over " + std::to_string(cons.size()) +
                        " constraints is too large");
    }

    std::vector<std::size_t> pick(P);
    for (std::size_t k = 0; k < P; ++k) {
        pick[k] = k;
    }
    do {
        std::vector<RationalVector> A(P);
        RationalVector b(P);
        for (std::size_t k = 0; k < P; ++k) {
            A[k] = cons[pick[k]].a;
            b[k] = -cons[pick[k]].b;
        }
        const auto t = solve_square(std::move(A), std::move(b));
        if (!t) {
            continue;
        }
        if (std::all_of(cons.begin(), cons.end(),
                        [&](const Halfspace& h) { return satisfied(h, *t); })) {
            return to_alloc(*t);
        }
    } while (next_combination(pick, cons.size()));
    return std::nullopt;
}

BalancedSolutions balanced_allocations(const ExactGraph& g, const EdgeSet& m) {
    const auto partner = partners(g, m);
    const std::size_t n = g.num_vertices();
    const std::size_t P = m.size();
    const auto alpha = pair_coordinates(g, m);

    // Outside-option choices per matched vertex: nullopt = none.
    std::vector<std::vector<std::optional<ExactNeighbor>>> options(n);
    std::vector<std::size_t> matched;
    for (std::size_t i = 0; i < n; ++i) {
        if (!partner[i]) {
            continue;
        }
        matched.push_back(i);
        options[i].push_back(std::nullopt);
        for (const auto& nb : g.neighbors(i)) {
            if (nb.vertex != *partner[i]) {
                options[i].push_back(nb);
            }
        }
    }
    double assignments = 1.0;
    for (std::size_t i : matched) {
        assignments *= static_cast<double>(options[i].size());
    }
    if (assignments > static_cast<double>(kMaxBalancedAssignments)) {
        throw SizeError("balanced-allocation search over " + std::to_string(assignments) +
                        " outside-option assignments is too large");
    }
    // |alpha_i| <= (w_ij + max w) / 2 for balanced allocations, so this box
    // never cuts the solution set; it only keeps every region bounded.
    Rational bound = 1;
    for (const auto& ed : g.edges()) {
        bound += ed.w;
    }

    BalancedSolutions out;
    std::vector<std::size_t> choice(n, 0);
    auto chosen = [&](std::size_t i) -> const std::optional<ExactNeighbor>& {
        return options[i][choice[i]];
    };
    // w_ik - alpha_k as an affine function of t, per edge id.
    std::vector<std::array<Halfspace, 2>> offers;
    for (const auto& ed : g.edges()) {
        auto make = [&](std::size_t k, const Rational& w) {
            Halfspace h{RationalVector(P), w - alpha[k].constant};
            for (std::size_t q = 0; q < P; ++q) {
                h.a[q] = -alpha[k].coef[q];
            }
            return h;
        };
        offers.push_back({make(ed.v, ed.w), make(ed.u, ed.w)});  // seen from u, from v
    }
    auto offer = [&](const ExactNeighbor& nb) -> const Halfspace& {
        return offers[nb.edge][g.edges()[nb.edge].u == nb.vertex ? 1 : 0];
    };
    const Halfspace nothing{RationalVector(P), Rational(0)};
    auto beta = [&](std::size_t i) -> const Halfspace& {
        const auto& c = chosen(i);
        return c ? offer(*c) : nothing;
    };

    // Closure of "the chosen options are the maximizers", plus the box.
    auto assignment_constraints = [&]() {
        std::vector<Halfspace> cons;
        for (std::size_t i : matched) {
            const auto& c = chosen(i);
            const Halfspace& mine = beta(i);
            for (const auto& nb : g.neighbors(i)) {
                if (nb.vertex == *partner[i] || (c && nb.vertex == c->vertex)) {
                    continue;
                }
                cons.push_back(difference(mine, offer(nb)));
            }
            if (c) {
                cons.push_back(mine);
            }
        }
        for (std::size_t k = 0; k < P; ++k) {
            Halfspace lo{RationalVector(P), bound};
            lo.a[k] = 1;
            Halfspace hi{RationalVector(P), bound};
            hi.a[k] = -1;
            cons.push_back(std::move(lo));
            cons.push_back(std::move(hi));
        }
        return cons;
    };
    auto strictly_positive = [&](const RationalVector& t) {
        for (std::size_t i : matched) {
            if (const auto& c = chosen(i); c && !positive(offer(*c), t)) {
                return false;
            }
        }
        return true;
    };

    // Floating-point screen: an assignment whose double solution misses one of
    // its constraints by far more than rounding error cannot be feasible, so
    // the exact work is skipped. Near-singular systems always go exact.
    struct Row {
        std::vector<double> a;
        double b = 0.0;
    };
    auto approx = [&](const Halfspace& h) {
        Row r{std::vector<double>(P), to_double(h.b)};
        for (std::size_t k = 0; k < P; ++k) {
            r.a[k] = to_double(h.a[k]);
        }
        return r;
    };
    std::vector<std::array<Row, 2>> offers_d;
    for (const auto& o : offers) {
        offers_d.push_back({approx(o[0]), approx(o[1])});
    }
    const Row nothing_d{std::vector<double>(P), 0.0};
    auto beta_d = [&](std::size_t i) -> const Row& {
        const auto& c = chosen(i);
        return c ? offers_d[c->edge][g.edges()[c->edge].u == c->vertex ? 1 : 0] : nothing_d;
    };
    std::vector<Row> alpha_d;
    for (const auto& af : alpha) {
        alpha_d.push_back(approx(Halfspace{af.coef, af.constant}));
    }
    auto value = [](const Row& r, const std::vector<double>& t) {
        double v = r.b;
        for (std::size_t k = 0; k < t.size(); ++k) {
            v += r.a[k] * t[k];
        }
        return v;
    };
    auto clearly_infeasible = [&]() {
        constexpr double slack = 1e-7;
        std::vector<std::vector<double>> A(P, std::vector<double>(P));
        std::vector<double> t(P);
        for (std::size_t p = 0; p < P; ++p) {
            const auto& ed = g.edges()[m[p]];
            const Row& bu = beta_d(ed.u);
            const Row& bv = beta_d(ed.v);
            for (std::size_t k = 0; k < P; ++k) {
                A[p][k] = 2 * alpha_d[ed.u].a[k] - bu.a[k] + bv.a[k];
            }
            t[p] = to_double(ed.w) - 2 * alpha_d[ed.u].b + bu.b - bv.b;
        }
        for (std::size_t c = 0; c < P; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < P; ++r) {
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) {
                    piv = r;
                }
            }
            if (std::abs(A[piv][c]) < 1e-6) {
                return false;
            }
            std::swap(A[piv], A[c]);
            std::swap(t[piv], t[c]);
            for (std::size_t r = 0; r < P; ++r) {
                if (r == c) {
                    continue;
                }
                const double f = A[r][c] / A[c][c];
                for (std::size_t k = c; k < P; ++k) {
                    A[r][k] -= f * A[c][k];
                }
                t[r] -= f * t[c];
            }
        }
        for (std::size_t c = 0; c < P; ++c) {
            t[c] /= A[c][c];
        }
        for (std::size_t i : matched) {
            const auto& c = chosen(i);
            const Row& mine = beta_d(i);
            const double own = value(mine, t);
            if (c && own < -slack) {
                return true;
            }
            for (const auto& nb : g.neighbors(i)) {
                if (nb.vertex == *partner[i] || (c && nb.vertex == c->vertex)) {
                    continue;
                }
                const Row& other =
                    offers_d[nb.edge][g.edges()[nb.edge].u == nb.vertex ? 1 : 0];
                if (own - value(other, t) < -slack) {
                    return true;
                }
            }
        }
        return false;
    };

    for (;;) {
        if (!clearly_infeasible()) {
            // Pair p = (u, v): 2 alpha_u - beta_u + beta_v - w_p = 0.
            std::vector<RationalVector> A(P, RationalVector(P));
            RationalVector b(P);
            for (std::size_t p = 0; p < P; ++p) {
                const auto& ed = g.edges()[m[p]];
                const Halfspace& bu = beta(ed.u);
                const Halfspace& bv = beta(ed.v);
                for (std::size_t k = 0; k < P; ++k) {
                    A[p][k] = 2 * alpha[ed.u].coef[k] - bu.a[k] + bv.a[k];
                }
                b[p] = ed.w - 2 * alpha[ed.u].constant + bu.b - bv.b;
            }
            if (const auto t = solve_square(A, b)) {
                const auto cons = assignment_constraints();
                const bool ok = std::all_of(cons.begin(), cons.end(),
                                            [&](const Halfspace& h) { return satisfied(h, *t); });
                if (ok && strictly_positive(*t)) {
                    out.allocations.push_back(evaluate(alpha, *t));
                }
            } else {
                ++out.singular_assignments;
                if (const auto aff = solve_affine(std::move(A), std::move(b))) {
                    std::vector<RationalVector> vertices;
                    for (const auto& t : polytope_vertices(*aff, assignment_constraints(), 2 * P)) {
                        vertices.push_back(evaluate(alpha, t));
                    }
                    std::sort(vertices.begin(), vertices.end());
                    if (vertices.size() == 1) {
                        out.allocations.push_back(std::move(vertices.front()));
                    } else if (vertices.size() > 1) {
                        out.pieces.push_back({std::move(vertices)});
                    }
                }
            }
        }

        std::size_t pos = 0;
        while (pos < matched.size()) {
            const std::size_t i = matched[pos];
            if (++choice[i] < options[i].size()) {
                break;
            }
            choice[i] = 0;
            ++pos;
        }
        if (pos == matched.size()) {
            break;
        }
    }

    for (const auto& a : out.allocations) {
        check_balanced(g, m, a);
    }
    for (const auto& piece : out.pieces) {
        for (const auto& a : piece.vertices) {
            check_balanced(g, m, a);
        }
    }
    std::sort(out.allocations.begin(), out.allocations.end());
    out.allocations.erase(std::unique(out.allocations.begin(), out.allocations.end()),
                          out.allocations.end());
    auto by_vertices = [](const BalancedPiece& a, const BalancedPiece& b) {
        return a.vertices < b.vertices;
    };
    auto same_vertices = [](const BalancedPiece& a, const BalancedPiece& b) {
        return a.vertices == b.vertices;
    };
    std::sort(out.pieces.begin(), out.pieces.end(), by_vertices);
    out.pieces.erase(std::unique(out.pieces.begin(), out.pieces.end(), same_vertices),
                     out.pieces.end());
    return out;
}

Rational distance_to_piece(const BalancedPiece& piece, const RationalVector& x) {
    // Variables: lambda (K), delta, one slack per inequality (2n).
    // min delta s.t. +-(sum_k lambda_k v_k - x)_i <= delta, sum lambda = 1.
    const std::size_t K = piece.vertices.size();
    const std::size_t n = x.size();
    const std::size_t vars = K + 1 + 2 * n;
    ExactLp lp;
    lp.c.assign(vars, Rational(0));
    lp.c[K] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (int sign : {1, -1}) {
            RationalVector row(vars);
            for (std::size_t k = 0; k < K; ++k) {
                row[k] = sign * piece.vertices[k].at(i);
            }
            row[K] = -1;
            row[K + 1 + 2 * i + (sign > 0 ? 0 : 1)] = 1;
            lp.A.push_back(std::move(row));
            lp.b.push_back(sign * x[i]);
        }
    }
    RationalVector convex(vars);
    for (std::size_t k = 0; k < K; ++k) {
        convex[k] = 1;
    }
    lp.A.push_back(std::move(convex));
    lp.b.push_back(1);
    const auto sol = solve_standard_form(lp);
    if (sol.status != LpStatus::Optimal) {
        throw std::logic_error("distance LP has no optimum");
    }
    return sol.value;
}

NashOracleResult nash_oracle(const ExactGraph& g) {
    NashOracleResult r;
    r.mwm = max_weight_matching(g);
    r.relaxation = lp_relaxation_optimum(g);
    auto balanced = balanced_allocations(g, r.mwm.edges);
    r.balanced = std::move(balanced.allocations);
    r.balanced_pieces = std::move(balanced.pieces);
    r.singular_assignments = balanced.singular_assignments;
    for (const auto& a : r.balanced) {
        if (is_stable(g, a)) {
            r.nash.push_back(a);
        }
    }
    for (const auto& piece : r.balanced_pieces) {
        if (std::all_of(piece.vertices.begin(), piece.vertices.end(),
                        [&](const RationalVector& a) { return is_stable(g, a); })) {
            r.nash_pieces.push_back(piece);
        }
    }
    r.unstable_balanced = r.relaxation.integral && (r.nash.size() < r.balanced.size() ||
                                                  r.nash_pieces.size() < r.balanced_pieces.size());
    return r;
}

}  // namespace dyadic::oracle
