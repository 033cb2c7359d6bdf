#include "dyadic/balance.hpp"
#include "dyadic/detail/agent_rules.hpp"
#include "dyadic/nash.hpp"
#include "dyadic/stable.hpp"

#include "support/graphs.hpp"
#include "support/recording_view.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace dyadic;
using dyadic::testing::AccessLog;
using dyadic::testing::RecordingView;

namespace {

using Hops = std::vector<std::optional<std::size_t>>;

bool within(const Hops& hops, Vertex v, std::size_t k) { return hops[v] && *hops[v] <= k; }

// An agent k hops deep may read vertices at distance <= k and edges with an
// endpoint at distance <= k - 1.
void check_reads(const WeightedGraph& g, const AccessLog& log, const Hops& hops,
                 std::size_t k) {
    for (Vertex v : log.vertices) {
        CHECK(within(hops, v, k));
    }
    for (EdgeId e : log.edges) {
        const auto& ed = g.edges()[e];
        CHECK((within(hops, ed.u, k - 1) || within(hops, ed.v, k - 1)));
    }
}

StableState random_state(std::mt19937_64& rng, const WeightedGraph& g) {
    StableState st;
    st.alpha_s = dyadic::testing::random_vector(rng, g.num_vertices(), 0.0, 2.0);
    st.s = dyadic::testing::random_vector(rng, g.num_edges(), 0.0, 1.0);
    st.m = dyadic::testing::random_vector(rng, g.num_edges(), 0.0, 1.0);
    return st;
}

std::optional<Incidence> matched_incidence(const WeightedGraph& g, const Matching& m, Vertex i) {
    const auto j = m.partner(i);
    if (!j) {
        return std::nullopt;
    }
    return Incidence{*j, *g.find_edge(i, *j)};
}

Matching greedy_matching(const WeightedGraph& g) {
    std::vector<bool> used(g.num_vertices(), false);
    std::vector<EdgeId> chosen;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edges()[e];
        if (!used[ed.u] && !used[ed.v]) {
            used[ed.u] = used[ed.v] = true;
            chosen.push_back(e);
        }
    }
    return Matching::from_edges(g, chosen);
}

}  // namespace

TEST_CASE("stable dynamics reads only incident edges and neighbors") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = dyadic::testing::random_graph(rng, 7, 0.4, 0.5, 3.0);
        const auto st = random_state(rng, g);
        AccessLog log;
        const RecordingView view{&g, &st, {}, &log};
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
            log.clear();
            const double f = detail::stable_alpha_flow(view, i);
            CHECK(f == f_alpha(g, st, i));
            check_reads(g, log, hop_distances(g, i), 1);
        }
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            const auto& ed = g.edges()[e];
            log.clear();
            CHECK(detail::stable_slack_flow(view, e) == f_s(g, st, e));
            (void)detail::stable_match_rate(view, e);
            // Edge agents see their two endpoints and nothing else.
            for (Vertex v : log.vertices) {
                CHECK((v == ed.u || v == ed.v));
            }
            CHECK(log.edges == std::set<EdgeId>{e});
        }
    }
}

TEST_CASE("balancing reads at most two hops") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = dyadic::testing::random_graph(rng, 8, 0.35, 0.5, 3.0);
        const auto m = greedy_matching(g);
        const auto alloc = dyadic::testing::random_vector(rng, g.num_vertices(), 0.0, 2.0);
        const auto errors = balancing_error(g, m, alloc);
        AccessLog log;
        const RecordingView view{&g, nullptr, alloc, &log};
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
            log.clear();
            const double e = detail::balance_error(view, i, matched_incidence(g, m, i));
            CHECK(e == errors[i]);
            check_reads(g, log, hop_distances(g, i), 2);
        }
    }
}

TEST_CASE("cascade reads at most two hops") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = dyadic::testing::random_graph(rng, 8, 0.35, 0.5, 3.0);
        NashState st{random_state(rng, g), {}};
        st.alpha_b = dyadic::testing::random_vector(rng, g.num_vertices(), 0.0, 2.0);
        const auto rates = nash_rhs(g, st);
        AccessLog log;
        const RecordingView view{&g, &st.stable, st.alpha_b, &log};
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
            log.clear();
            CHECK(detail::cascade_balance_rate(view, i) == rates.alpha_b[i]);
            check_reads(g, log, hop_distances(g, i), 2);
        }
    }
}

TEST_CASE("changing far-away state leaves an agent's rate unchanged") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = dyadic::testing::random_graph(rng, 9, 0.3, 0.5, 3.0);
        NashState st{random_state(rng, g), {}};
        st.alpha_b = dyadic::testing::random_vector(rng, g.num_vertices(), 0.0, 2.0);
        const auto base = nash_rhs(g, st);
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
            const auto hops = hop_distances(g, i);
            NashState far = st;
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                if (!within(hops, v, 2)) {
                    far.alpha_b[v] += 5.0;
                    far.stable.alpha_s[v] += 5.0;
                }
            }
            for (EdgeId e = 0; e < g.num_edges(); ++e) {
                const auto& ed = g.edges()[e];
                if (!within(hops, ed.u, 1) && !within(hops, ed.v, 1)) {
                    far.stable.m[e] = 1.0 - far.stable.m[e];
                    far.stable.s[e] += 1.0;
                }
            }
            const auto moved = nash_rhs(g, far);
            CHECK(moved.alpha_b[i] == base.alpha_b[i]);
            CHECK(moved.stable.alpha_s[i] == base.stable.alpha_s[i]);
        }
    }
}
