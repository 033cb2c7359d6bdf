#pragma once

// Exact rational arithmetic for the brute-force oracles. Nothing here depends
// on the dynamics or on the floating-point predicates in graph.hpp.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyadic {
class WeightedGraph;
struct ParsedGraph;
}  // namespace dyadic

namespace dyadic::oracle {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

/// Raised when an instance is too large for exhaustive enumeration.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Exact value of a decimal literal such as "1.2", "-3", "2.5e-1".
/// Throws std::invalid_argument on malformed input.
[[nodiscard]] Rational parse_decimal(const std::string& s);
/// Exact value of a finite double.
[[nodiscard]] Rational from_double(double x);
[[nodiscard]] double to_double(const Rational& r);

struct ExactEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational w;
};

struct ExactNeighbor {
    std::size_t vertex = 0;
    std::size_t edge = 0;
};

/// Independent graph representation for the oracles (0-based vertices).
class ExactGraph {
public:
    explicit ExactGraph(std::size_t n = 0);
    /// Weights from the exact decimal literals of a parsed file.
    [[nodiscard]] static ExactGraph from_parsed(const ParsedGraph& pg);
    /// Weights converted exactly from doubles. Edge ids follow g.
    [[nodiscard]] static ExactGraph from_graph(const WeightedGraph& g);

    /// Throws std::invalid_argument on self-loops, duplicates, bad ids or
    /// negative weights.
    std::size_t add_edge(std::size_t u, std::size_t v, Rational w);

    [[nodiscard]] std::size_t num_vertices() const { return adj_.size(); }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
    [[nodiscard]] const std::vector<ExactEdge>& edges() const { return edges_; }
    [[nodiscard]] const std::vector<ExactNeighbor>& neighbors(std::size_t i) const {
        return adj_.at(i);
    }
    [[nodiscard]] std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const;

private:
    std::vector<ExactEdge> edges_;
    std::vector<std::vector<ExactNeighbor>> adj_;
};

/// Edge ids of a matching, sorted ascending.
using EdgeSet = std::vector<std::size_t>;

/// Partner table of a matching; throws std::invalid_argument when two edges
/// share a vertex.
[[nodiscard]] std::vector<std::optional<std::size_t>> partners(const ExactGraph& g,
                                                               const EdgeSet& m);

/// Exact versions of the outcome predicates.
[[nodiscard]] Rational best_alternative(const ExactGraph& g, const RationalVector& alloc,
                                        std::size_t i, std::optional<std::size_t> exclude);
[[nodiscard]] bool is_valid(const ExactGraph& g, const EdgeSet& m, const RationalVector& alloc);
[[nodiscard]] bool is_stable(const ExactGraph& g, const RationalVector& alloc);
[[nodiscard]] bool is_balanced(const ExactGraph& g, const EdgeSet& m, const RationalVector& alloc);

/// Solves the square system A x = b by Gaussian elimination. nullopt when A is
/// singular.
[[nodiscard]] std::optional<RationalVector> solve_square(std::vector<RationalVector> A,
                                                         RationalVector b);

/// Solution set {x0 + sum_k s_k d_k} of A x = b (any shape), or nullopt when
/// the system is inconsistent.
struct AffineSolution {
    RationalVector x0;
    std::vector<RationalVector> directions;
};
[[nodiscard]] std::optional<AffineSolution> solve_affine(std::vector<RationalVector> A,
                                                         RationalVector b);

/// Next k-subset of {0..n-1} in lexicographic order; false after the last.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n);

}  // namespace dyadic::oracle
