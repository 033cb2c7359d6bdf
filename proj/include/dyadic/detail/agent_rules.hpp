#pragma once

// Per-agent right-hand sides of the three bargaining dynamics, written against
// a read-only state view. Production code instantiates them with a direct view;
// the locality audit instantiates them with a view that records every state and
// weight read.
//
// A view provides:
//   neighbors(i)   -> span<const Incidence>   structural, not audited
//   endpoints(e)   -> const Edge&             structural, not audited
//   weight(e)      -> w_e
//   alpha_s(i), slack(e), match(e)            stable-dynamics states
//   alloc(i)                                  balancing allocation alpha^b
//
// Stable dynamics. With r_e = alpha_u + alpha_v - s_e - w_e on edge e = (u, v):
//   f^alpha_i = -1 + sum_{e at i} (m_e - r_e)
//   f^s_e     = r_e - m_e
//   m_e'      = -r_e
// This is the generic projected LP flow for
//   min sum alpha  s.t.  -alpha_u - alpha_v + s_e = -w_e,  alpha, s >= 0
// with multiplier z = m, so m converges to a solution of the matching
// relaxation (m_e -> 1 on matched edges).

#include "dyadic/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace dyadic::detail {

template <class View>
double edge_residual(const View& v, EdgeId e) {
    const Edge& ed = v.endpoints(e);
    return v.alpha_s(ed.u) + v.alpha_s(ed.v) - v.slack(e) - v.weight(e);
}

template <class View>
double stable_alpha_flow(const View& v, Vertex i) {
    double f = -1.0;
    for (const auto& inc : v.neighbors(i)) {
        f += v.match(inc.edge) - edge_residual(v, inc.edge);
    }
    return f;
}

template <class View>
double stable_slack_flow(const View& v, EdgeId e) {
    return edge_residual(v, e) - v.match(e);
}

template <class View>
double stable_match_rate(const View& v, EdgeId e) {
    return -edge_residual(v, e);
}

inline double project_at_zero(double state, double flow) {
    return state == 0.0 ? std::max(0.0, flow) : flow;
}

/// {max_k (w_ik - alloc_k)}_+ over k in N(i) \ {exclude}.
template <class View>
double best_offer(const View& v, Vertex i, Vertex exclude) {
    double best = 0.0;
    for (const auto& inc : v.neighbors(i)) {
        if (inc.neighbor != exclude) {
            best = std::max(best, v.weight(inc.edge) - v.alloc(inc.neighbor));
        }
    }
    return best;
}

/// Balancing error of a matched agent i against partner j over edge e.
template <class View>
double matched_balance_error(const View& v, Vertex i, Vertex j, EdgeId e) {
    return v.alloc(i) - 0.5 * (v.weight(e) + best_offer(v, i, j) - best_offer(v, j, i));
}

/// Balancing error of agent i given its partner (nullopt when unmatched).
template <class View>
double balance_error(const View& v, Vertex i, const std::optional<Incidence>& partner) {
    if (partner) {
        return matched_balance_error(v, i, partner->neighbor, partner->edge);
    }
    return v.alloc(i);
}

/// Neighbor whose matching state is strictly closest to 1, if unique.
template <class View>
std::optional<Incidence> predict_partner(const View& v, Vertex i) {
    std::optional<Incidence> best;
    double best_dist = std::numeric_limits<double>::infinity();
    bool tie = false;
    for (const auto& inc : v.neighbors(i)) {
        const double d = std::abs(v.match(inc.edge) - 1.0);
        if (d < best_dist) {
            best_dist = d;
            best = inc;
            tie = false;
        } else if (d == best_dist) {
            tie = true;
        }
    }
    if (tie) {
        return std::nullopt;
    }
    return best;
}

/// Partner of i under mutual prediction, with the connecting edge.
template <class View>
std::optional<Incidence> mutual_partner(const View& v, Vertex i) {
    const auto p = predict_partner(v, i);
    if (!p) {
        return std::nullopt;
    }
    const auto back = predict_partner(v, p->neighbor);
    if (back && back->neighbor == i) {
        return p;
    }
    return std::nullopt;
}

/// alpha^b_i' in the cascade: balance against a mutually predicted partner,
/// otherwise decay to zero.
template <class View>
double cascade_balance_rate(const View& v, Vertex i) {
    return -balance_error(v, i, mutual_partner(v, i));
}

}  // namespace dyadic::detail
