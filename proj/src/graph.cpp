#include "dyadic/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace dyadic {

WeightedGraph::WeightedGraph(std::size_t n) : adjacency_(n) {}

EdgeId WeightedGraph::add_edge(Vertex i, Vertex j, double w) {
    const auto n = num_vertices();
    if (i >= n || j >= n) {
        throw GraphError("edge endpoint out of range");
    }
    if (i == j) {
        throw GraphError("self-loop at vertex " + std::to_string(i + 1));
    }
    if (!std::isfinite(w) || w < 0.0) {
        throw GraphError("edge weight must be finite and nonnegative");
    }
    if (find_edge(i, j)) {
        throw GraphError("duplicate edge (" + std::to_string(std::min(i, j) + 1) + ", " +
                         std::to_string(std::max(i, j) + 1) + ")");
    }
    const EdgeId id = edges_.size();
    edges_.push_back(Edge{std::min(i, j), std::max(i, j), w});
    adjacency_[i].push_back(Incidence{j, id});
    adjacency_[j].push_back(Incidence{i, id});
    return id;
}

std::span<const Incidence> WeightedGraph::neighbors(Vertex i) const {
    return adjacency_.at(i);
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex i, Vertex j) const {
    if (i >= num_vertices() || j >= num_vertices()) {
        return std::nullopt;
    }
    const auto& list = adjacency_[i].size() <= adjacency_[j].size() ? adjacency_[i] : adjacency_[j];
    const Vertex target = adjacency_[i].size() <= adjacency_[j].size() ? j : i;
    for (const auto& inc : list) {
        if (inc.neighbor == target) {
            return inc.edge;
        }
    }
    return std::nullopt;
}

double WeightedGraph::weight(Vertex i, Vertex j) const {
    if (auto e = find_edge(i, j)) {
        return edges_[*e].w;
    }
    throw GraphError("no edge (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
}

Matching Matching::from_edges(const WeightedGraph& g, std::span<const EdgeId> edges) {
    Matching m(g.num_vertices());
    for (EdgeId e : edges) {
        if (e >= g.num_edges()) {
            throw GraphError("matching edge id out of range");
        }
        const Edge& ed = g.edge(e);
        if (m.partner_[ed.u] || m.partner_[ed.v]) {
            throw GraphError("matching edges share vertex");
        }
        m.partner_[ed.u] = ed.v;
        m.partner_[ed.v] = ed.u;
        m.edges_.push_back(e);
    }
    std::sort(m.edges_.begin(), m.edges_.end());
    return m;
}

Matching Matching::from_pairs(const WeightedGraph& g,
                              std::span<const std::pair<Vertex, Vertex>> pairs) {
    std::vector<EdgeId> ids;
    ids.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        auto e = g.find_edge(i, j);
        if (!e) {
            throw GraphError("matching pair (" + std::to_string(i + 1) + ", " +
                             std::to_string(j + 1) + ") is not an edge");
        }
        ids.push_back(*e);
    }
    return from_edges(g, ids);
}

double Matching::weight(const WeightedGraph& g) const {
    double total = 0.0;
    for (EdgeId e : edges_) {
        total += g.edge(e).w;
    }
    return total;
}

namespace {

// Largest unclamped offer max_k (w_ik - alloc_k), or -inf without candidates.
double best_raw_offer(const WeightedGraph& g, std::span<const double> alloc, Vertex i,
                      std::optional<Vertex> exclude) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& inc : g.neighbors(i)) {
        if (exclude && inc.neighbor == *exclude) {
            continue;
        }
        best = std::max(best, g.edge(inc.edge).w - alloc[inc.neighbor]);
    }
    return best;
}

void check_alloc(const WeightedGraph& g, std::span<const double> alloc) {
    if (alloc.size() != g.num_vertices()) {
        throw std::invalid_argument("allocation has length " + std::to_string(alloc.size()) +
                                    ", expected " + std::to_string(g.num_vertices()));
    }
}

void check_matching(const WeightedGraph& g, const Matching& m) {
    if (m.num_vertices() != g.num_vertices()) {
        throw std::invalid_argument("matching built for a different vertex count");
    }
    for (EdgeId e : m.edges()) {
        if (e >= g.num_edges()) {
            throw std::invalid_argument("matching edge not in graph");
        }
    }
}

}  // namespace

double best_alternative(const WeightedGraph& g, std::span<const double> alloc, Vertex i,
                        std::optional<Vertex> exclude) {
    return std::max(0.0, best_raw_offer(g, alloc, i, exclude));
}

std::vector<Vertex> next_best_set(const WeightedGraph& g, std::span<const double> alloc,
                                  Vertex i, std::optional<Vertex> exclude) {
    std::vector<Vertex> out;
    const double best = best_raw_offer(g, alloc, i, exclude);
    if (!(best > 0.0)) {
        return out;
    }
    for (const auto& inc : g.neighbors(i)) {
        if (exclude && inc.neighbor == *exclude) {
            continue;
        }
        if (g.edge(inc.edge).w - alloc[inc.neighbor] == best) {
            out.push_back(inc.neighbor);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double validity_residual(const WeightedGraph& g, const Outcome& o) {
    check_alloc(g, o.alloc);
    check_matching(g, o.matching);
    double worst = 0.0;
    for (EdgeId e : o.matching.edges()) {
        const Edge& ed = g.edge(e);
        worst = std::max(worst, std::abs(o.alloc[ed.u] + o.alloc[ed.v] - ed.w));
    }
    for (Vertex k = 0; k < g.num_vertices(); ++k) {
        if (!o.matching.is_matched(k)) {
            worst = std::max(worst, std::abs(o.alloc[k]));
        }
    }
    return worst;
}

bool is_valid_outcome(const WeightedGraph& g, const Outcome& o, double tol) {
    return validity_residual(g, o) <= tol;
}

double stability_residual(const WeightedGraph& g, std::span<const double> alloc) {
    check_alloc(g, alloc);
    double worst = 0.0;
    for (double a : alloc) {
        worst = std::max(worst, -a);
    }
    for (const Edge& ed : g.edges()) {
        worst = std::max(worst, ed.w - alloc[ed.u] - alloc[ed.v]);
    }
    return worst;
}

bool is_stable(const WeightedGraph& g, const Outcome& o, double tol) {
    return stability_residual(g, o.alloc) <= tol;
}

double balance_residual(const WeightedGraph& g, const Outcome& o) {
    check_alloc(g, o.alloc);
    check_matching(g, o.matching);
    double worst = 0.0;
    for (EdgeId e : o.matching.edges()) {
        const Edge& ed = g.edge(e);
        const double gain_u = best_alternative(g, o.alloc, ed.u, ed.v) - o.alloc[ed.u];
        const double gain_v = best_alternative(g, o.alloc, ed.v, ed.u) - o.alloc[ed.v];
        worst = std::max(worst, std::abs(gain_u - gain_v));
    }
    return worst;
}

bool is_balanced(const WeightedGraph& g, const Outcome& o, double tol) {
    return balance_residual(g, o) <= tol;
}

bool is_nash(const WeightedGraph& g, const Outcome& o, double tol) {
    return is_stable(g, o, tol) && is_balanced(g, o, tol);
}

std::vector<std::optional<std::size_t>> hop_distances(const WeightedGraph& g, Vertex from) {
    std::vector<std::optional<std::size_t>> dist(g.num_vertices());
    std::deque<Vertex> queue{from};
    dist.at(from) = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const auto& inc : g.neighbors(v)) {
            if (!dist[inc.neighbor]) {
                dist[inc.neighbor] = *dist[v] + 1;
                queue.push_back(inc.neighbor);
            }
        }
    }
    return dist;
}

}  // namespace dyadic
