#include "summary.hpp"

namespace dyadic::cli {

using nlohmann::json;

json config_json(const RunConfig& c) {
    return json{{"dt", c.dt},
                {"t_final", c.t_final},
                {"tol", c.tol},
                {"sample_stride", c.sample_stride},
                {"seed", c.seed},
                {"noise_kind", to_string(c.noise_kind)},
                {"noise_bound", c.noise_bound},
                {"noise_sigma", c.noise_sigma},
                {"threshold", c.threshold},
                {"max_norm", c.max_norm},
                {"prediction_dwell", c.prediction_dwell},
                {"early_stop", c.early_stop}};
}

json outcome_json(const WeightedGraph& g, const Outcome& o) {
    json pairs = json::array();
    for (EdgeId e : o.matching.edges()) {
        const auto& ed = g.edges()[e];
        pairs.push_back({ed.u + 1, ed.v + 1});
    }
    return json{{"matching", pairs}, {"alloc", o.alloc}};
}

json stable_summary(const WeightedGraph& g, const StableRun& run) {
    json out{{"status", to_string(run.status)},
             {"message", run.message},
             {"t_end", run.t_end},
             {"steps", run.steps},
             {"fractional", run.fractional},
             {"kkt_residual", run.kkt_residual},
             {"stability_residual", run.stability_residual},
             {"alpha_s", run.alloc},
             {"m", run.final_state.m}};
    if (run.matching) {
        const Outcome o{*run.matching, run.alloc};
        out["outcome"] = outcome_json(g, o);
        out["is_stable"] = run.status == RunStatus::Converged;
    } else {
        out["outcome"] = nullptr;
        out["is_stable"] = false;
    }
    return out;
}

json balanced_summary(const WeightedGraph& g, const BalancedRun& run) {
    return json{{"status", to_string(run.status)},
                {"message", run.message},
                {"t_end", run.t_end},
                {"error_norm", run.error_norm},
                {"errors", run.errors},
                {"max_level_increase", run.max_level_increase},
                {"outcome", outcome_json(g, run.outcome)},
                {"is_balanced", run.status == RunStatus::Converged}};
}

json nash_summary(const WeightedGraph& g, const NashRun& run) {
    json out{{"status", to_string(run.status)},
             {"message", run.message},
             {"t_end", run.t_end},
             {"settled", run.settled},
             {"pairing_changes", run.pairing_changes},
             {"stability_residual", run.stability_residual},
             {"balance_residual", run.balance_residual},
             {"validity_residual", run.validity_residual},
             {"is_nash", run.nash},
             {"alpha_b", run.final_state.alpha_b},
             {"m", run.final_state.stable.m}};
    if (run.settled) {
        out["settle_time"] = run.settle_time;
    } else {
        out["settle_time"] = nullptr;
    }
    out["outcome"] = run.outcome ? outcome_json(g, *run.outcome) : json(nullptr);
    return out;
}

}  // namespace dyadic::cli
