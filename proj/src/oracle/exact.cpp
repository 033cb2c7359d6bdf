#include "dyadic/oracle/exact.hpp"

#include "dyadic/graph.hpp"
#include "dyadic/io.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace dyadic::oracle {

namespace {

Rational pow10(long e) {
    Integer p = 1;
    for (long k = 0; k < (e < 0 ? -e : e); ++k) {
        p *= 10;
    }
    return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

Rational parse_decimal(const std::string& s) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    Integer digits = 0;
    long scale = 0;
    std::size_t count = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        digits = digits * 10 + (s[pos++] - '0');
        ++count;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits = digits * 10 + (s[pos++] - '0');
            --scale;
            ++count;
        }
    }
    if (count == 0) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool exp_negative = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            exp_negative = s[pos] == '-';
            ++pos;
        }
        long exp = 0;
        std::size_t exp_digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            exp = exp * 10 + (s[pos++] - '0');
            if (++exp_digits > 6) {
                throw std::invalid_argument("exponent too large in '" + s + "'");
            }
        }
        if (exp_digits == 0) {
            throw std::invalid_argument("not a decimal number: '" + s + "'");
        }
        scale += exp_negative ? -exp : exp;
    }
    if (pos != s.size()) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    Rational r = Rational(digits) * pow10(scale);
    return negative ? Rational(-r) : r;
}

Rational from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot represent a non-finite value exactly");
    }
    return Rational(x);  // mpq_set_d is exact
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

ExactGraph::ExactGraph(std::size_t n) : adj_(n) {}

ExactGraph ExactGraph::from_parsed(const ParsedGraph& pg) {
    ExactGraph out(pg.graph.num_vertices());
    for (std::size_t e = 0; e < pg.graph.num_edges(); ++e) {
        const auto& ed = pg.graph.edge(e);
        out.add_edge(ed.u, ed.v, parse_decimal(pg.weight_literals.at(e)));
    }
    return out;
}

ExactGraph ExactGraph::from_graph(const WeightedGraph& g) {
    ExactGraph out(g.num_vertices());
    for (const auto& ed : g.edges()) {
        out.add_edge(ed.u, ed.v, from_double(ed.w));
    }
    return out;
}

std::size_t ExactGraph::add_edge(std::size_t u, std::size_t v, Rational w) {
    if (u >= adj_.size() || v >= adj_.size() || u == v) {
        throw std::invalid_argument("bad edge endpoints");
    }
    if (w < 0) {
        throw std::invalid_argument("negative edge weight");
    }
    if (find_edge(u, v)) {
        throw std::invalid_argument("duplicate edge");
    }
    if (u > v) {
        std::swap(u, v);
    }
    const std::size_t id = edges_.size();
    edges_.push_back({u, v, std::move(w)});
    adj_[u].push_back({v, id});
    adj_[v].push_back({u, id});
    return id;
}

std::optional<std::size_t> ExactGraph::find_edge(std::size_t u, std::size_t v) const {
    for (const auto& nb : adj_.at(u)) {
        if (nb.vertex == v) {
            return nb.edge;
        }
    }
    return std::nullopt;
}

std::vector<std::optional<std::size_t>> partners(const ExactGraph& g, const EdgeSet& m) {
    std::vector<std::optional<std::size_t>> p(g.num_vertices());
    for (std::size_t e : m) {
        const auto& ed = g.edges().at(e);
        if (p[ed.u] || p[ed.v]) {
            throw std::invalid_argument("edge set is not a matching");
        }
        p[ed.u] = ed.v;
        p[ed.v] = ed.u;
    }
    return p;
}

Rational best_alternative(const ExactGraph& g, const RationalVector& alloc, std::size_t i,
                          std::optional<std::size_t> exclude) {
    Rational best = 0;
    for (const auto& nb : g.neighbors(i)) {
        if (exclude && nb.vertex == *exclude) {
            continue;
        }
        const Rational offer = g.edges()[nb.edge].w - alloc[nb.vertex];
        if (offer > best) {
            best = offer;
        }
    }
    return best;
}

bool is_valid(const ExactGraph& g, const EdgeSet& m, const RationalVector& alloc) {
    const auto p = partners(g, m);
    for (std::size_t e : m) {
        const auto& ed = g.edges()[e];
        if (alloc[ed.u] + alloc[ed.v] != ed.w) {
            return false;
        }
    }
    for (std::size_t k = 0; k < g.num_vertices(); ++k) {
        if (!p[k] && alloc[k] != 0) {
            return false;
        }
    }
    return true;
}

bool is_stable(const ExactGraph& g, const RationalVector& alloc) {
    for (const auto& a : alloc) {
        if (a < 0) {
            return false;
        }
    }
    for (const auto& ed : g.edges()) {
        if (alloc[ed.u] + alloc[ed.v] < ed.w) {
            return false;
        }
    }
    return true;
}

bool is_balanced(const ExactGraph& g, const EdgeSet& m, const RationalVector& alloc) {
    for (std::size_t e : m) {
        const auto& ed = g.edges()[e];
        const Rational gain_u = best_alternative(g, alloc, ed.u, ed.v) - alloc[ed.u];
        const Rational gain_v = best_alternative(g, alloc, ed.v, ed.u) - alloc[ed.v];
        if (gain_u != gain_v) {
            return false;
        }
    }
    return true;
}

std::optional<RationalVector> solve_square(std::vector<RationalVector> A, RationalVector b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && A[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(A[pivot], A[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) {
                continue;
            }
            const Rational f = A[r][col] / A[col][col];
            for (std::size_t k = col; k < n; ++k) {
                A[r][k] -= f * A[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = b[i] / A[i][i];
    }
    return x;
}

std::optional<AffineSolution> solve_affine(std::vector<RationalVector> A, RationalVector b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        const Rational inv = 1 / A[r][c];
        for (std::size_t k = c; k < cols; ++k) {
            A[r][k] *= inv;
        }
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) {
                continue;
            }
            const Rational f = A[i][c];
            for (std::size_t k = c; k < cols; ++k) {
                A[i][k] -= f * A[r][k];
            }
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return std::nullopt;
        }
    }
    AffineSolution out;
    out.x0.assign(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) {
        out.x0[pivot_col[i]] = b[i];
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        RationalVector d(cols, Rational(0));
        d[f] = 1;
        for (std::size_t i = 0; i < r; ++i) {
            d[pivot_col[i]] = -A[i][f];
        }
        out.directions.push_back(std::move(d));
    }
    return out;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

}  // namespace dyadic::oracle
