#pragma once

// Bargaining arena: weighted undirected graphs, matchings, outcomes, and the
// outcome predicates (valid, stable, balanced, Nash).
//
// Vertices are 0-based in the C++ API. Every text format, CLI flag and CSV
// column is 1-based; conversion happens only in io.cpp and the CLI.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

using Vertex = std::size_t;
using EdgeId = std::size_t;

/// Undirected edge, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    double w = 0.0;

    [[nodiscard]] Vertex other(Vertex x) const { return x == u ? v : u; }
};

/// One entry of a vertex's adjacency list.
struct Incidence {
    Vertex neighbor = 0;
    EdgeId edge = 0;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t n);

    /// Rejects self-loops, duplicate pairs, negative or non-finite weights and
    /// out-of-range vertices with GraphError.
    EdgeId add_edge(Vertex i, Vertex j, double w);

    [[nodiscard]] std::size_t num_vertices() const { return adjacency_.size(); }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    [[nodiscard]] std::span<const Incidence> neighbors(Vertex i) const;
    [[nodiscard]] std::size_t degree(Vertex i) const { return neighbors(i).size(); }

    [[nodiscard]] std::optional<EdgeId> find_edge(Vertex i, Vertex j) const;
    /// Throws GraphError when (i, j) is not an edge.
    [[nodiscard]] double weight(Vertex i, Vertex j) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

/// Set of pairwise vertex-disjoint edges of a host graph.
class Matching {
public:
    Matching() = default;
    /// Empty matching on an n-vertex graph.
    explicit Matching(std::size_t n) : partner_(n) {}

    /// Throws GraphError when an edge is missing from g or two edges share a
    /// vertex.
    static Matching from_edges(const WeightedGraph& g, std::span<const EdgeId> edges);
    static Matching from_pairs(const WeightedGraph& g,
                               std::span<const std::pair<Vertex, Vertex>> pairs);

    [[nodiscard]] std::optional<Vertex> partner(Vertex i) const { return partner_.at(i); }
    [[nodiscard]] bool is_matched(Vertex i) const { return partner_.at(i).has_value(); }
    /// Edge ids, sorted ascending.
    [[nodiscard]] const std::vector<EdgeId>& edges() const { return edges_; }
    [[nodiscard]] std::size_t size() const { return edges_.size(); }
    [[nodiscard]] bool empty() const { return edges_.empty(); }
    [[nodiscard]] std::size_t num_vertices() const { return partner_.size(); }
    [[nodiscard]] double weight(const WeightedGraph& g) const;

    friend bool operator==(const Matching& a, const Matching& b) { return a.edges_ == b.edges_; }

private:
    std::vector<EdgeId> edges_;
    std::vector<std::optional<Vertex>> partner_;
};

struct Outcome {
    Matching matching;
    std::vector<double> alloc;
};

/// Best allocation i can secure from a neighbor other than `exclude`:
/// max_k {w_ik - alloc_k}_+, zero when no candidate remains.
[[nodiscard]] double best_alternative(const WeightedGraph& g, std::span<const double> alloc,
                                      Vertex i, std::optional<Vertex> exclude);

/// Neighbors realizing best_alternative, sorted. Empty when there is no
/// candidate or the best unclamped offer w_ik - alloc_k is <= 0.
[[nodiscard]] std::vector<Vertex> next_best_set(const WeightedGraph& g,
                                                std::span<const double> alloc, Vertex i,
                                                std::optional<Vertex> exclude);

/// Throws std::invalid_argument when alloc has the wrong length or a matched
/// edge is missing from g.
[[nodiscard]] bool is_valid_outcome(const WeightedGraph& g, const Outcome& o, double tol);
[[nodiscard]] bool is_stable(const WeightedGraph& g, const Outcome& o, double tol);
[[nodiscard]] bool is_balanced(const WeightedGraph& g, const Outcome& o, double tol);
[[nodiscard]] bool is_nash(const WeightedGraph& g, const Outcome& o, double tol);

/// Largest violation of alloc >= 0 and alloc_i + alloc_j >= w_ij; zero iff
/// stable with tol = 0.
[[nodiscard]] double stability_residual(const WeightedGraph& g, std::span<const double> alloc);
/// Largest balance mismatch over matched pairs.
[[nodiscard]] double balance_residual(const WeightedGraph& g, const Outcome& o);
/// Largest validity violation (pair sums and unmatched allocations).
[[nodiscard]] double validity_residual(const WeightedGraph& g, const Outcome& o);

/// Hop distance from `from`, or nullopt when unreachable.
[[nodiscard]] std::vector<std::optional<std::size_t>> hop_distances(const WeightedGraph& g,
                                                                    Vertex from);

}  // namespace dyadic
