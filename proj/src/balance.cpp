#include "dyadic/balance.hpp"

#include "dyadic/detail/agent_rules.hpp"
#include "dyadic/detail/views.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dyadic {

namespace {

void check_inputs(const WeightedGraph& g, const Matching& m, std::span<const double> alloc) {
    if (alloc.size() != g.num_vertices()) {
        throw std::invalid_argument("allocation has length " + std::to_string(alloc.size()) +
                                    ", expected " + std::to_string(g.num_vertices()));
    }
    if (m.num_vertices() != g.num_vertices()) {
        throw std::invalid_argument("matching built for a different vertex count");
    }
}

std::vector<std::optional<Incidence>> partner_incidences(const WeightedGraph& g,
                                                         const Matching& m) {
    std::vector<std::optional<Incidence>> out(g.num_vertices());
    for (EdgeId e : m.edges()) {
        const Edge& ed = g.edge(e);
        out[ed.u] = Incidence{ed.v, e};
        out[ed.v] = Incidence{ed.u, e};
    }
    return out;
}

void errors_into(const WeightedGraph& g, const std::vector<std::optional<Incidence>>& partners,
                 std::span<const double> alloc, BalanceErrors& out) {
    const detail::AllocView view{{&g}, alloc};
    out.resize(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        out[i] = detail::balance_error(view, i, partners[i]);
    }
}

double inf_norm(std::span<const double> v) {
    double out = 0.0;
    for (double x : v) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

}  // namespace

BalanceErrors balancing_error(const WeightedGraph& g, const Matching& m,
                              std::span<const double> alloc) {
    check_inputs(g, m, alloc);
    BalanceErrors e;
    errors_into(g, partner_incidences(g, m), alloc, e);
    return e;
}

std::vector<double> balance_rhs(const WeightedGraph& g, const Matching& m,
                                std::span<const double> alloc) {
    auto e = balancing_error(g, m, alloc);
    for (double& x : e) {
        x = -x;
    }
    return e;
}

std::optional<double> option_gap(const WeightedGraph& g, std::span<const double> alloc,
                                 Vertex i, std::optional<Vertex> exclude) {
    double best = 0.0;
    double second = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& inc : g.neighbors(i)) {
        if (exclude && inc.neighbor == *exclude) {
            continue;
        }
        any = true;
        const double offer = g.edge(inc.edge).w - alloc[inc.neighbor];
        if (offer > best) {
            second = best;
            best = offer;
        } else if (offer > second) {
            second = offer;
        }
    }
    if (!any) {
        return std::nullopt;
    }
    return best - second;
}

double locality_radius(const WeightedGraph& g, const Matching& m, std::span<const double> alloc) {
    check_inputs(g, m, alloc);
    double gap = std::numeric_limits<double>::infinity();
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        if (const auto p = m.partner(i)) {
            const auto d = option_gap(g, alloc, i, *p);
            if (d && *d > 0.0) {
                gap = std::min(gap, *d);
            }
        }
    }
    return 0.01 * (1.0 + (std::isfinite(gap) ? gap : 0.0));
}

double balance_level(std::span<const double> errors) {
    const double n = inf_norm(errors);
    return 0.5 * n * n;
}

BalancedRun run_balanced(const WeightedGraph& g, const Matching& m, std::vector<double> alpha,
                         const BalanceOptions& options) {
    check_inputs(g, m, alpha);
    const std::size_t steps = step_count(options.dt, options.t_final, 500'000'000);
    const std::size_t stride = std::max<std::size_t>(1, options.sampling.stride);
    const auto partners = partner_incidences(g, m);

    BalancedRun run;
    std::vector<std::string> cols{"t"};
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        cols.push_back("alpha_b_" + std::to_string(i + 1));
    }
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        cols.push_back("e_" + std::to_string(i + 1));
    }
    cols.emplace_back("V");
    for (EdgeId e : m.edges()) {
        const Edge& ed = g.edge(e);
        cols.push_back("pair_" + std::to_string(ed.u + 1) + "_" + std::to_string(ed.v + 1));
    }
    run.trajectory = Trajectory(std::move(cols));

    BalanceErrors err;
    errors_into(g, partners, alpha, err);
    double level = balance_level(err);
    std::vector<double> row;
    auto sample = [&](double t) {
        if (!options.sampling.record) {
            return;
        }
        row.assign(1, t);
        row.insert(row.end(), alpha.begin(), alpha.end());
        row.insert(row.end(), err.begin(), err.end());
        row.push_back(level);
        for (EdgeId e : m.edges()) {
            const Edge& ed = g.edge(e);
            row.push_back(alpha[ed.u] + alpha[ed.v] - ed.w);
        }
        run.trajectory.append(row);
    };

    sample(0.0);
    double t = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        for (Vertex i = 0; i < alpha.size(); ++i) {
            alpha[i] -= options.dt * err[i];
        }
        t = static_cast<double>(k) * options.dt;
        const double norm = inf_norm(alpha);
        if (!std::isfinite(norm) || norm > options.max_norm) {
            run.status = RunStatus::Diverged;
            run.message = "diverged at t = " + std::to_string(t);
            break;
        }
        errors_into(g, partners, alpha, err);
        const double next = balance_level(err);
        run.max_level_increase = std::max(run.max_level_increase, next - level);
        level = next;
        if (k % stride == 0 || k == steps) {
            sample(t);
        }
    }
    run.t_end = t;
    run.errors = err;
    run.error_norm = inf_norm(err);
    run.outcome = Outcome{m, std::move(alpha)};
    if (run.status != RunStatus::Diverged) {
        if (run.error_norm < options.tol) {
            run.status = RunStatus::Converged;
            run.message = "balanced outcome found";
        } else {
            run.status = RunStatus::Undecided;
            run.message = "balancing errors above tolerance at the final time";
        }
    }
    return run;
}

}  // namespace dyadic
