#include "dyadic/stable.hpp"

#include "dyadic/detail/agent_rules.hpp"
#include "dyadic/detail/views.hpp"

#include <algorithm>
#include <cmath>

namespace dyadic {

StableState StableState::zeros(const WeightedGraph& g) {
    return StableState{std::vector<double>(g.num_vertices(), 0.0),
                       std::vector<double>(g.num_edges(), 0.0),
                       std::vector<double>(g.num_edges(), 0.0)};
}

void StableState::check_shape(const WeightedGraph& g) const {
    if (alpha_s.size() != g.num_vertices() || s.size() != g.num_edges() ||
        m.size() != g.num_edges()) {
        throw DimensionError("stable state does not match the graph");
    }
}

namespace {

void check_admissible(const StableState& st) {
    const auto neg = [](double x) { return x < 0.0; };
    if (std::any_of(st.alpha_s.begin(), st.alpha_s.end(), neg) ||
        std::any_of(st.s.begin(), st.s.end(), neg)) {
        throw StateError("stable state has a negative allocation or slack");
    }
}

}  // namespace

double f_alpha(const WeightedGraph& g, const StableState& st, Vertex i) {
    st.check_shape(g);
    return detail::stable_alpha_flow(detail::StableView{{&g}, &st}, i);
}

double f_s(const WeightedGraph& g, const StableState& st, EdgeId e) {
    st.check_shape(g);
    return detail::stable_slack_flow(detail::StableView{{&g}, &st}, e);
}

namespace detail {

void stable_rates_into(const WeightedGraph& g, const StableState& probe,
                       const StableState& actual, StableRates& out) {
    const StableView view{{&g}, &probe};
    out.alpha_s.resize(g.num_vertices());
    out.s.resize(g.num_edges());
    out.m.resize(g.num_edges());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        out.alpha_s[i] = project_at_zero(actual.alpha_s[i], stable_alpha_flow(view, i));
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        out.s[e] = project_at_zero(actual.s[e], stable_slack_flow(view, e));
        out.m[e] = stable_match_rate(view, e);
    }
}

void stable_rates_into(const WeightedGraph& g, const StableState& st, StableRates& out) {
    stable_rates_into(g, st, st, out);
}

std::vector<std::string> stable_columns(const WeightedGraph& g, const std::string& alpha_name) {
    std::vector<std::string> cols{"t"};
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        cols.push_back(alpha_name + "_" + std::to_string(i + 1));
    }
    for (const char* prefix : {"s_", "m_"}) {
        for (const Edge& e : g.edges()) {
            cols.push_back(prefix + std::to_string(e.u + 1) + "_" + std::to_string(e.v + 1));
        }
    }
    return cols;
}

double max_abs(const StableRates& r) {
    double out = 0.0;
    for (const auto* v : {&r.alpha_s, &r.s, &r.m}) {
        for (double x : *v) {
            out = std::max(out, std::abs(x));
        }
    }
    return out;
}

void euler_step(StableState& st, const StableRates& r, double dt) {
    for (std::size_t i = 0; i < st.alpha_s.size(); ++i) {
        st.alpha_s[i] = std::max(0.0, st.alpha_s[i] + dt * r.alpha_s[i]);
    }
    for (std::size_t e = 0; e < st.s.size(); ++e) {
        st.s[e] = std::max(0.0, st.s[e] + dt * r.s[e]);
        st.m[e] += dt * r.m[e];
    }
}

}  // namespace detail

StableRates stable_rhs(const WeightedGraph& g, const StableState& st) {
    st.check_shape(g);
    check_admissible(st);
    StableRates out;
    detail::stable_rates_into(g, st, out);
    return out;
}

LpProblem assemble_stable_lp(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    const auto ne = static_cast<Eigen::Index>(g.num_edges());
    LpProblem p;
    p.c = Eigen::VectorXd::Zero(n + ne);
    p.c.head(n).setOnes();
    p.A = Eigen::MatrixXd::Zero(ne, n + ne);
    p.b = Eigen::VectorXd::Zero(ne);
    for (Eigen::Index e = 0; e < ne; ++e) {
        const Edge& ed = g.edge(static_cast<EdgeId>(e));
        p.A(e, static_cast<Eigen::Index>(ed.u)) = -1.0;
        p.A(e, static_cast<Eigen::Index>(ed.v)) = -1.0;
        p.A(e, n + e) = 1.0;
        p.b[e] = -ed.w;
    }
    return p;
}

OperatorLp stable_operator_lp(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    const auto ne = static_cast<Eigen::Index>(g.num_edges());
    OperatorLp p;
    p.c = Eigen::VectorXd::Zero(n + ne);
    p.c.head(n).setOnes();
    p.b = Eigen::VectorXd(ne);
    for (Eigen::Index e = 0; e < ne; ++e) {
        p.b[e] = -g.edge(static_cast<EdgeId>(e)).w;
    }
    p.A.rows = ne;
    p.A.cols = n + ne;
    const auto edges = g.edges();
    p.A.apply = [edges, n](const Eigen::VectorXd& x) {
        Eigen::VectorXd y(static_cast<Eigen::Index>(edges.size()));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto k = static_cast<Eigen::Index>(e);
            y[k] = -x[static_cast<Eigen::Index>(edges[e].u)] -
                   x[static_cast<Eigen::Index>(edges[e].v)] + x[n + k];
        }
        return y;
    };
    p.A.apply_transpose = [edges, n](const Eigen::VectorXd& y) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n + static_cast<Eigen::Index>(edges.size()));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto k = static_cast<Eigen::Index>(e);
            x[static_cast<Eigen::Index>(edges[e].u)] -= y[k];
            x[static_cast<Eigen::Index>(edges[e].v)] -= y[k];
            x[n + k] += y[k];
        }
        return x;
    };
    return p;
}

LpState to_lp_state(const StableState& st) {
    const auto n = static_cast<Eigen::Index>(st.alpha_s.size());
    const auto ne = static_cast<Eigen::Index>(st.s.size());
    LpState s{Eigen::VectorXd(n + ne), Eigen::VectorXd(ne)};
    for (Eigen::Index i = 0; i < n; ++i) {
        s.x[i] = st.alpha_s[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index e = 0; e < ne; ++e) {
        s.x[n + e] = st.s[static_cast<std::size_t>(e)];
        s.z[e] = st.m[static_cast<std::size_t>(e)];
    }
    return s;
}

StableState from_lp_state(const WeightedGraph& g, const LpState& s) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    const auto ne = static_cast<Eigen::Index>(g.num_edges());
    if (s.x.size() != n + ne || s.z.size() != ne) {
        throw DimensionError("LP state does not match the stable layout");
    }
    StableState st = StableState::zeros(g);
    for (Eigen::Index i = 0; i < n; ++i) {
        st.alpha_s[static_cast<std::size_t>(i)] = s.x[i];
    }
    for (Eigen::Index e = 0; e < ne; ++e) {
        st.s[static_cast<std::size_t>(e)] = s.x[n + e];
        st.m[static_cast<std::size_t>(e)] = s.z[e];
    }
    return st;
}

double stable_kkt_residual(const WeightedGraph& g, const StableState& st) {
    st.check_shape(g);
    return kkt_residual(stable_operator_lp(g), to_lp_state(st));
}

std::optional<Matching> extract_matching(const WeightedGraph& g, std::span<const double> m,
                                         double threshold) {
    if (m.size() != g.num_edges()) {
        throw DimensionError("matching-state vector does not match the graph");
    }
    std::vector<EdgeId> picked;
    for (EdgeId e = 0; e < m.size(); ++e) {
        if (std::abs(m[e] - 1.0) < threshold) {
            picked.push_back(e);
        }
    }
    try {
        return Matching::from_edges(g, picked);
    } catch (const GraphError&) {
        return std::nullopt;
    }
}

bool has_fractional_state(std::span<const double> m, double threshold) {
    return std::any_of(m.begin(), m.end(), [threshold](double x) {
        return std::abs(x) >= threshold && std::abs(x - 1.0) >= threshold;
    });
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::Undecided: return "undecided";
        case RunStatus::Unsettled: return "unsettled";
        case RunStatus::Diverged: return "diverged";
    }
    return "unknown";
}

StableRun run_stable(const WeightedGraph& g, StableState st, const StableOptions& options) {
    st.check_shape(g);
    check_admissible(st);
    if (!(options.threshold > 0.0 && options.threshold < 0.5)) {
        throw std::invalid_argument("matching threshold must lie in (0, 0.5)");
    }
    const std::size_t steps = step_count(options.dt, options.t_final, 500'000'000);
    const std::size_t stride = std::max<std::size_t>(1, options.sampling.stride);
    const OperatorLp lp = stable_operator_lp(g);

    StableRun run;
    auto cols = detail::stable_columns(g, "alpha_s");
    cols.emplace_back("kkt_residual");
    cols.emplace_back("stab_residual");
    run.trajectory = Trajectory(std::move(cols));
    std::vector<double> row;
    auto sample = [&](double t) {
        if (!options.sampling.record) {
            return;
        }
        row.assign(1, t);
        row.insert(row.end(), st.alpha_s.begin(), st.alpha_s.end());
        row.insert(row.end(), st.s.begin(), st.s.end());
        row.insert(row.end(), st.m.begin(), st.m.end());
        row.push_back(kkt_residual(lp, to_lp_state(st)));
        row.push_back(stability_residual(g, st.alpha_s));
        run.trajectory.append(row);
    };

    sample(0.0);
    StableRates rates;
    std::size_t quiet = 0;
    double t = 0.0;
    std::size_t k = 0;
    bool diverged = false;
    for (k = 1; k <= steps; ++k) {
        detail::stable_rates_into(g, st, rates);
        quiet = detail::max_abs(rates) < options.stop_rate ? quiet + 1 : 0;
        detail::euler_step(st, rates, options.dt);
        t = static_cast<double>(k) * options.dt;
        double norm = 0.0;
        for (const auto* v : {&st.alpha_s, &st.s, &st.m}) {
            for (double x : *v) {
                norm = std::max(norm, std::abs(x));
            }
        }
        if (!std::isfinite(norm) || norm > options.max_norm) {
            diverged = true;
            run.message = "diverged at t = " + std::to_string(t);
            break;
        }
        const bool stop = options.early_stop && quiet >= options.stop_window;
        if (k % stride == 0 || k == steps || stop) {
            sample(t);
        }
        if (stop) {
            break;
        }
    }
    run.steps = std::min(k, steps);
    run.t_end = t;
    run.kkt_residual = kkt_residual(lp, to_lp_state(st));
    run.stability_residual = stability_residual(g, st.alpha_s);
    run.alloc = st.alpha_s;
    run.fractional = has_fractional_state(st.m, options.threshold);
    run.matching = extract_matching(g, st.m, options.threshold);
    run.final_state = std::move(st);

    if (diverged) {
        run.status = RunStatus::Diverged;
        return run;
    }
    if (run.fractional) {
        run.status = RunStatus::Undecided;
        run.message = "no integral solution (fractional LP optimum)";
    } else if (!run.matching) {
        run.status = RunStatus::Undecided;
        run.message = "undecided matching: selected edges share a vertex";
    } else {
        const Outcome o{*run.matching, run.alloc};
        if (!is_valid_outcome(g, o, options.tol) || !is_stable(g, o, options.tol)) {
            run.status = RunStatus::Undecided;
            run.message = "not converged: outcome violates validity or stability tolerance";
        } else {
            run.status = RunStatus::Converged;
            run.message = "stable outcome found";
        }
    }
    return run;
}

}  // namespace dyadic
