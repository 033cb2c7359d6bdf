#include "dyadic/graph.hpp"

#include "support/graphs.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace dyadic;
using namespace dyadic::testing;

namespace {

Outcome outcome(const WeightedGraph& g, std::vector<std::pair<Vertex, Vertex>> pairs,
                std::vector<double> alloc) {
    return {Matching::from_pairs(g, pairs), std::move(alloc)};
}

}  // namespace

TEST_CASE("graph construction rejects malformed edges") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1.0);
    CHECK_THROWS_AS(g.add_edge(1, 1, 1.0), GraphError);
    CHECK_THROWS_AS(g.add_edge(1, 0, 2.0), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 2, -0.5), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 3, 1.0), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 2, std::numeric_limits<double>::quiet_NaN()), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 2, std::numeric_limits<double>::infinity()), GraphError);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("edges are stored with u < v and neighbor lists are exact") {
    WeightedGraph g(4);
    const EdgeId e = g.add_edge(2, 0, 1.5);
    g.add_edge(0, 3, 0.5);
    CHECK(g.edge(e).u == 0);
    CHECK(g.edge(e).v == 2);
    CHECK(g.edge(e).other(0) == 2);
    CHECK(g.weight(2, 0) == 1.5);
    CHECK_THROWS_AS((void)g.weight(1, 2), GraphError);
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(1) == 0);
    std::vector<Vertex> nb;
    for (const auto& inc : g.neighbors(0)) {
        nb.push_back(inc.neighbor);
    }
    std::sort(nb.begin(), nb.end());
    CHECK(nb == std::vector<Vertex>{2, 3});
    CHECK(g.find_edge(3, 0).has_value());
    CHECK_FALSE(g.find_edge(1, 3).has_value());
}

TEST_CASE("matchings must be vertex-disjoint edges of the host graph") {
    const auto g = path3();
    const std::vector<std::pair<Vertex, Vertex>> both{{0, 1}, {1, 2}};
    CHECK_THROWS_AS((void)Matching::from_pairs(g, both), GraphError);
    const std::vector<std::pair<Vertex, Vertex>> missing{{0, 2}};
    CHECK_THROWS_AS((void)Matching::from_pairs(g, missing), GraphError);
    const std::vector<std::pair<Vertex, Vertex>> ok{{1, 0}};
    const auto m = Matching::from_pairs(g, ok);
    CHECK(m.size() == 1);
    CHECK(m.partner(0) == 1u);
    CHECK(m.partner(1) == 0u);
    CHECK_FALSE(m.is_matched(2));
    CHECK(m.weight(g) == doctest::Approx(1.2));
}

TEST_CASE("is_valid_outcome") {
    const auto g = single_edge();
    CHECK(is_valid_outcome(g, outcome(g, {{0, 1}}, {0.4, 0.6}), 0.0));
    CHECK(is_valid_outcome(g, outcome(g, {}, {0.0, 0.0}), 0.0));
    CHECK_FALSE(is_valid_outcome(g, outcome(g, {{0, 1}}, {0.4, 0.5}), 0.0));
    CHECK_FALSE(is_valid_outcome(g, outcome(g, {}, {0.1, 0.0}), 0.0));
    CHECK_THROWS_AS((void)is_valid_outcome(g, outcome(g, {{0, 1}}, {0.5}), 0.0),
                    std::invalid_argument);
}

TEST_CASE("is_stable") {
    const auto g = path3();
    CHECK(is_stable(g, outcome(g, {{0, 1}}, {0.1, 1.1, 0.0}), 1e-9));
    CHECK_FALSE(is_stable(g, outcome(g, {{0, 1}}, {0.9, 0.3, 0.0}), 1e-9));
    const auto e = single_edge();
    CHECK(is_stable(e, outcome(e, {{0, 1}}, {1.0, 0.0}), 0.0));
    CHECK_FALSE(is_stable(e, outcome(e, {{0, 1}}, {1.5, -0.5}), 0.0));
}

TEST_CASE("best_alternative and next_best_set") {
    const auto g = path3();
    const std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK(best_alternative(g, zero, 1, 0) == 1.0);
    CHECK(best_alternative(g, zero, 0, 1) == 0.0);
    const std::vector<double> high{0.0, 0.0, 1.5};
    CHECK(best_alternative(g, high, 1, 0) == 0.0);

    CHECK(next_best_set(g, zero, 1, 2) == std::vector<Vertex>{0});
    CHECK(next_best_set(g, high, 1, 0).empty());
    CHECK(next_best_set(g, zero, 0, 1).empty());

    WeightedGraph star(3);
    star.add_edge(0, 1, 1.0);
    star.add_edge(0, 2, 1.0);
    CHECK(next_best_set(star, zero, 0, std::nullopt) == std::vector<Vertex>{1, 2});
}

TEST_CASE("is_balanced and is_nash") {
    const auto e = single_edge();
    CHECK(is_balanced(e, outcome(e, {{0, 1}}, {0.5, 0.5}), 1e-12));
    CHECK_FALSE(is_balanced(e, outcome(e, {{0, 1}}, {0.3, 0.7}), 1e-12));
    CHECK_FALSE(is_nash(e, outcome(e, {{0, 1}}, {1.0, 0.0}), 1e-12));

    const auto g = path3();
    CHECK(is_balanced(g, outcome(g, {{0, 1}}, {0.1, 1.1, 0.0}), 1e-9));
    CHECK(is_nash(g, outcome(g, {{0, 1}}, {0.1, 1.1, 0.0}), 1e-9));

    // No valid outcome of the unit triangle is stable.
    const auto t = triangle(1, 1, 1);
    for (double a = 0.0; a <= 1.0; a += 0.125) {
        CHECK_FALSE(is_nash(t, outcome(t, {{0, 1}}, {a, 1.0 - a, 0.0}), 1e-9));
    }
}

TEST_CASE("residuals vanish exactly where the predicates hold") {
    const auto g = path3();
    const auto good = outcome(g, {{0, 1}}, {0.1, 1.1, 0.0});
    CHECK(stability_residual(g, good.alloc) <= 1e-12);
    CHECK(balance_residual(g, good) <= 1e-12);
    CHECK(validity_residual(g, good) <= 1e-12);
    const auto bad = outcome(g, {{0, 1}}, {0.9, 0.3, 0.0});
    CHECK(stability_residual(g, bad.alloc) == doctest::Approx(0.7));
    CHECK(validity_residual(g, bad) == doctest::Approx(0.0));
}

TEST_CASE("predicate properties on random outcomes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_graph(rng, 6, 0.5, 0.0, 3.0);
        auto alloc = random_vector(rng, 6, -0.5, 2.0);
        std::uniform_int_distribution<Vertex> pick(0, 5);
        const Vertex i = pick(rng);
        const std::optional<Vertex> exclude =
            g.degree(i) > 0 ? std::optional<Vertex>(g.neighbors(i)[0].neighbor) : std::nullopt;

        const double beta = best_alternative(g, alloc, i, exclude);
        CHECK(beta >= 0.0);
        for (const auto& inc : g.neighbors(i)) {
            auto raised = alloc;
            raised[inc.neighbor] += 0.3;
            CHECK(best_alternative(g, raised, i, exclude) <= beta);
        }

        for (Vertex k : next_best_set(g, alloc, i, exclude)) {
            CHECK(g.find_edge(i, k).has_value());
            CHECK(k != exclude);
            CHECK(g.weight(i, k) - alloc[k] == doctest::Approx(beta));
        }

        // Random valid outcome on a greedy matching.
        std::vector<bool> used(6, false);
        std::vector<EdgeId> edges;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            const auto& ed = g.edge(e);
            if (!used[ed.u] && !used[ed.v]) {
                used[ed.u] = used[ed.v] = true;
                edges.push_back(e);
            }
        }
        Outcome o{Matching::from_edges(g, edges), std::vector<double>(6, 0.0)};
        for (EdgeId e : edges) {
            const auto& ed = g.edge(e);
            o.alloc[ed.u] = alloc[ed.u];
            o.alloc[ed.v] = ed.w - alloc[ed.u];
        }
        CHECK(is_valid_outcome(g, o, 1e-12));
        if (is_nash(g, o, 1e-9)) {
            CHECK(is_stable(g, o, 1e-9));
            CHECK(is_balanced(g, o, 1e-9));
        }
    }
}

TEST_CASE("hop distances") {
    WeightedGraph g(5);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(2, 3, 1.0);
    const auto d = hop_distances(g, 0);
    CHECK(d[0] == 0u);
    CHECK(d[2] == 2u);
    CHECK(d[3] == 3u);
    CHECK_FALSE(d[4].has_value());
}
