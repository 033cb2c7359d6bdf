#pragma once

// Direct (non-recording) state views for the agent rules.

#include "dyadic/graph.hpp"
#include "dyadic/stable.hpp"

#include <span>

namespace dyadic::detail {

struct GraphView {
    const WeightedGraph* g;

    [[nodiscard]] std::span<const Incidence> neighbors(Vertex i) const { return g->neighbors(i); }
    [[nodiscard]] const Edge& endpoints(EdgeId e) const { return g->edges()[e]; }
    [[nodiscard]] double weight(EdgeId e) const { return g->edges()[e].w; }
};

struct StableView : GraphView {
    const StableState* st;

    [[nodiscard]] double alpha_s(Vertex i) const { return st->alpha_s[i]; }
    [[nodiscard]] double slack(EdgeId e) const { return st->s[e]; }
    [[nodiscard]] double match(EdgeId e) const { return st->m[e]; }
};

struct AllocView : GraphView {
    std::span<const double> alpha_b;

    [[nodiscard]] double alloc(Vertex i) const { return alpha_b[i]; }
};

struct CascadeView : StableView {
    std::span<const double> alpha_b;

    [[nodiscard]] double alloc(Vertex i) const { return alpha_b[i]; }
};

}  // namespace dyadic::detail
