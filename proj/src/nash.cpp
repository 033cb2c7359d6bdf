#include "dyadic/nash.hpp"

#include "dyadic/detail/agent_rules.hpp"
#include "dyadic/detail/views.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic {

NashState NashState::zeros(const WeightedGraph& g) {
    return NashState{StableState::zeros(g), std::vector<double>(g.num_vertices(), 0.0)};
}

void NashState::check_shape(const WeightedGraph& g) const {
    stable.check_shape(g);
    if (alpha_b.size() != g.num_vertices()) {
        throw DimensionError("alpha_b does not match the graph");
    }
}

namespace {

using Predictions = std::vector<std::optional<Incidence>>;

void check_admissible(const StableState& st) {
    const auto neg = [](double x) { return x < 0.0; };
    if (std::any_of(st.alpha_s.begin(), st.alpha_s.end(), neg) ||
        std::any_of(st.s.begin(), st.s.end(), neg)) {
        throw StateError("Nash state has a negative allocation or slack");
    }
}

void predictions_into(const WeightedGraph& g, const StableState& st, Predictions& out) {
    const detail::StableView view{{&g}, &st};
    out.resize(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        out[i] = detail::predict_partner(view, i);
    }
}

void mutual_into(const Predictions& pred, Predictions& out) {
    out.resize(pred.size());
    for (Vertex i = 0; i < pred.size(); ++i) {
        const auto& p = pred[i];
        const bool mutual = p && pred[p->neighbor] && pred[p->neighbor]->neighbor == i;
        out[i] = mutual ? p : std::nullopt;
    }
}

bool same_pairing(const Predictions& a, const Predictions& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].has_value() != b[i].has_value() ||
            (a[i] && a[i]->neighbor != b[i]->neighbor)) {
            return false;
        }
    }
    return true;
}

void cascade_rates_into(const WeightedGraph& g, const NashState& probe,
                        const Predictions& mutual, std::vector<double>& out) {
    const detail::CascadeView view{{{&g}, &probe.stable}, probe.alpha_b};
    out.resize(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        out[i] = -detail::balance_error(view, i, mutual[i]);
    }
}

// Holds each agent's prediction until a different raw prediction has persisted
// for `dwell` consecutive steps.
class DwellFilter {
public:
    DwellFilter(std::size_t n, std::size_t dwell) : dwell_(dwell), held_(n), pending_(n), count_(n) {}

    const Predictions& update(const Predictions& raw) {
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (dwell_ == 0 || !initialised_ || same(raw[i], held_[i])) {
                held_[i] = raw[i];
                count_[i] = 0;
                continue;
            }
            if (count_[i] > 0 && same(raw[i], pending_[i])) {
                ++count_[i];
            } else {
                pending_[i] = raw[i];
                count_[i] = 1;
            }
            if (count_[i] >= dwell_) {
                held_[i] = raw[i];
                count_[i] = 0;
            }
        }
        initialised_ = true;
        return held_;
    }

private:
    static bool same(const std::optional<Incidence>& a, const std::optional<Incidence>& b) {
        return a.has_value() == b.has_value() && (!a || a->neighbor == b->neighbor);
    }

    std::size_t dwell_;
    bool initialised_ = false;
    Predictions held_;
    Predictions pending_;
    std::vector<std::size_t> count_;
};

Matching pairing_matching(const WeightedGraph& g, const Predictions& mutual) {
    std::vector<EdgeId> edges;
    for (Vertex i = 0; i < mutual.size(); ++i) {
        if (mutual[i] && i < mutual[i]->neighbor) {
            edges.push_back(mutual[i]->edge);
        }
    }
    std::sort(edges.begin(), edges.end());
    return Matching::from_edges(g, edges);
}

void add_noise(std::vector<double>& v, const std::vector<double>& d) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] += d[i];
    }
}

}  // namespace

std::optional<Vertex> predict_partner(const WeightedGraph& g, std::span<const double> m,
                                      Vertex i) {
    if (m.size() != g.num_edges()) {
        throw DimensionError("matching-state vector does not match the graph");
    }
    if (i >= g.num_vertices()) {
        throw std::out_of_range("vertex out of range");
    }
    std::optional<Vertex> best;
    double best_dist = 0.0;
    bool tie = false;
    for (const auto& inc : g.neighbors(i)) {
        const double d = std::abs(m[inc.edge] - 1.0);
        if (!best || d < best_dist) {
            best = inc.neighbor;
            best_dist = d;
            tie = false;
        } else if (d == best_dist) {
            tie = true;
        }
    }
    return tie ? std::nullopt : best;
}

std::vector<std::optional<Vertex>> mutual_pairing(const WeightedGraph& g,
                                                  std::span<const double> m) {
    std::vector<std::optional<Vertex>> pred(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        pred[i] = predict_partner(g, m, i);
    }
    std::vector<std::optional<Vertex>> out(g.num_vertices());
    for (Vertex i = 0; i < g.num_vertices(); ++i) {
        if (pred[i] && pred[*pred[i]] == i) {
            out[i] = pred[i];
        }
    }
    return out;
}

NashRates nash_rhs(const WeightedGraph& g, const NashState& st) {
    st.check_shape(g);
    check_admissible(st.stable);
    NashRates out;
    detail::stable_rates_into(g, st.stable, out.stable);
    Predictions pred;
    Predictions mutual;
    predictions_into(g, st.stable, pred);
    mutual_into(pred, mutual);
    cascade_rates_into(g, st, mutual, out.alpha_b);
    return out;
}

const char* to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::None: return "none";
        case NoiseKind::Uniform: return "uniform";
        case NoiseKind::Gauss: return "gauss";
    }
    return "unknown";
}

NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "none") {
        return NoiseKind::None;
    }
    if (s == "uniform") {
        return NoiseKind::Uniform;
    }
    if (s == "gauss") {
        return NoiseKind::Gauss;
    }
    throw std::invalid_argument("unknown noise kind '" + s + "'");
}

void Disturbance::validate() const {
    if (!(bound >= 0.0) || !std::isfinite(bound)) {
        throw std::invalid_argument("noise bound must be finite and nonnegative");
    }
    if (kind == NoiseKind::Gauss && !(sigma > 0.0)) {
        throw std::invalid_argument("noise sigma must be positive");
    }
}

DisturbanceSource::DisturbanceSource(const Disturbance& d)
    : d_(d), rng_(d.seed), uniform_(-d.bound, d.bound), normal_(0.0, d.sigma) {
    d_.validate();
}

double DisturbanceSource::draw() {
    switch (d_.kind) {
        case NoiseKind::None:
            return 0.0;
        case NoiseKind::Uniform:
            return uniform_(rng_);
        case NoiseKind::Gauss:
            for (;;) {
                const double x = normal_(rng_);
                if (std::abs(x) <= d_.bound) {
                    return x;
                }
            }
    }
    return 0.0;
}

void DisturbanceSource::fill(std::vector<double>& out, bool enabled) {
    for (double& x : out) {
        x = enabled ? draw() : 0.0;
    }
}

NashRun run_nash(const WeightedGraph& g, NashState st, const NashOptions& options) {
    st.check_shape(g);
    check_admissible(st.stable);
    options.disturbance.validate();
    if (!(options.settle_fraction >= 0.0 && options.settle_fraction < 1.0)) {
        throw std::invalid_argument("settle fraction must lie in [0, 1)");
    }
    const std::size_t steps = step_count(options.dt, options.t_final, 500'000'000);
    const std::size_t stride = std::max<std::size_t>(1, options.sampling.stride);
    const bool noisy = options.disturbance.active();
    const std::size_t n = g.num_vertices();
    const std::size_t ne = g.num_edges();

    NashRun run;
    auto cols = detail::stable_columns(g, "alpha_s");
    for (Vertex i = 0; i < n; ++i) {
        cols.push_back("alpha_b_" + std::to_string(i + 1));
    }
    for (Vertex i = 0; i < n; ++i) {
        cols.push_back("pred_" + std::to_string(i + 1));
    }
    run.trajectory = Trajectory(std::move(cols));

    DisturbanceSource source(options.disturbance);
    const auto& ch = options.disturbance.channels;
    std::vector<double> d1(n), d2(n), d3(ne), d4(ne);
    std::vector<double> d5a(n), d5b(n), d5s(ne), d5m(ne);

    DwellFilter dwell(n, options.prediction_dwell);
    Predictions raw;
    Predictions mutual;
    Predictions prev;
    NashState probe = st;
    NashRates rates;

    auto evaluate_pairing = [&](const NashState& at) {
        predictions_into(g, at.stable, raw);
        mutual_into(dwell.update(raw), mutual);
    };

    std::vector<double> row;
    auto sample = [&](double t) {
        if (!options.sampling.record) {
            return;
        }
        row.assign(1, t);
        row.insert(row.end(), st.stable.alpha_s.begin(), st.stable.alpha_s.end());
        row.insert(row.end(), st.stable.s.begin(), st.stable.s.end());
        row.insert(row.end(), st.stable.m.begin(), st.stable.m.end());
        row.insert(row.end(), st.alpha_b.begin(), st.alpha_b.end());
        for (Vertex i = 0; i < n; ++i) {
            row.push_back(raw[i] ? static_cast<double>(raw[i]->neighbor + 1) : 0.0);
        }
        run.trajectory.append(row);
    };

    evaluate_pairing(st);
    prev = mutual;
    sample(0.0);

    double t = 0.0;
    double last_change = 0.0;
    std::size_t quiet = 0;
    bool at_rest = false;
    bool diverged = false;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_prev = t;
        if (noisy) {
            source.fill(d1, ch[0]);
            source.fill(d2, ch[1]);
            source.fill(d3, ch[2]);
            source.fill(d4, ch[3]);
            probe = st;
            add_noise(probe.stable.alpha_s, d1);
            add_noise(probe.alpha_b, d2);
            add_noise(probe.stable.s, d3);
            add_noise(probe.stable.m, d4);
            if (k > 1) {
                evaluate_pairing(probe);
            }
        } else if (k > 1) {
            evaluate_pairing(st);
        }
        const NashState& at = noisy ? probe : st;
        if (!same_pairing(mutual, prev)) {
            ++run.pairing_changes;
            last_change = t_prev;
            prev = mutual;
        }
        detail::stable_rates_into(g, at.stable, st.stable, rates.stable);
        cascade_rates_into(g, at, mutual, rates.alpha_b);
        if (noisy) {
            source.fill(d5a, ch[4]);
            source.fill(d5b, ch[4]);
            source.fill(d5s, ch[4]);
            source.fill(d5m, ch[4]);
            add_noise(rates.stable.alpha_s, d5a);
            add_noise(rates.alpha_b, d5b);
            add_noise(rates.stable.s, d5s);
            add_noise(rates.stable.m, d5m);
        }
        double rate = detail::max_abs(rates.stable);
        for (double x : rates.alpha_b) {
            rate = std::max(rate, std::abs(x));
        }
        quiet = rate < options.stop_rate ? quiet + 1 : 0;

        detail::euler_step(st.stable, rates.stable, options.dt);
        double norm = 0.0;
        for (Vertex i = 0; i < n; ++i) {
            st.alpha_b[i] += options.dt * rates.alpha_b[i];
            norm = std::max(norm, std::abs(st.alpha_b[i]));
        }
        for (const auto* v : {&st.stable.alpha_s, &st.stable.s, &st.stable.m}) {
            for (double x : *v) {
                norm = std::max(norm, std::abs(x));
            }
        }
        t = static_cast<double>(k) * options.dt;
        if (!std::isfinite(norm) || norm > options.max_norm) {
            diverged = true;
            run.message = "diverged at t = " + std::to_string(t);
            break;
        }
        at_rest = options.early_stop && !noisy && quiet >= options.stop_window;
        if (k % stride == 0 || k == steps || at_rest) {
            sample(t);
        }
        if (at_rest) {
            break;
        }
    }

    run.t_end = t;
    run.settle_time = last_change;
    run.settled = !diverged &&
                  (at_rest || last_change <= (1.0 - options.settle_fraction) * options.t_final);
    const Matching pairing = pairing_matching(g, prev);
    Outcome o{pairing, st.alpha_b};
    run.stability_residual = stability_residual(g, o.alloc);
    run.balance_residual = balance_residual(g, o);
    run.validity_residual = validity_residual(g, o);
    run.nash = is_valid_outcome(g, o, options.tol) && is_nash(g, o, options.tol);
    run.outcome = std::move(o);
    run.final_state = std::move(st);

    if (diverged) {
        run.status = RunStatus::Diverged;
    } else if (!run.settled) {
        run.status = RunStatus::Unsettled;
        run.message = "matching never settled: pairing changed at t = " +
                      std::to_string(last_change);
    } else if (run.nash) {
        run.status = RunStatus::Converged;
        run.message = "Nash outcome found";
    } else {
        run.status = RunStatus::Undecided;
        run.message = "pairing settled but the outcome is not Nash within tolerance";
    }
    return run;
}

}  // namespace dyadic
