#include "dyadic/config.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadic {

void RunConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("--dt must be positive");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("--t-final must be nonnegative");
    }
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("--tol must be nonnegative");
    }
    if (sample_stride == 0) {
        throw std::invalid_argument("--sample-stride must be at least 1");
    }
    if (!(threshold > 0.0 && threshold < 0.5)) {
        throw std::invalid_argument("--threshold must lie in (0, 0.5)");
    }
    if (!(max_norm > 0.0)) {
        throw std::invalid_argument("--max-norm must be positive");
    }
    if (!(noise_bound >= 0.0) || !std::isfinite(noise_bound)) {
        throw std::invalid_argument("--noise-bound must be nonnegative");
    }
    if (!(noise_sigma > 0.0)) {
        throw std::invalid_argument("--noise-sigma must be positive");
    }
}

StableOptions stable_options(const RunConfig& c) {
    StableOptions o;
    o.dt = c.dt;
    o.t_final = c.t_final;
    o.threshold = c.threshold;
    o.tol = c.tol;
    o.max_norm = c.max_norm;
    o.early_stop = c.early_stop;
    o.sampling.stride = c.sample_stride;
    return o;
}

BalanceOptions balance_options(const RunConfig& c) {
    BalanceOptions o;
    o.dt = c.dt;
    o.t_final = c.t_final;
    o.tol = c.tol;
    o.max_norm = c.max_norm;
    o.sampling.stride = c.sample_stride;
    return o;
}

NashOptions nash_options(const RunConfig& c) {
    NashOptions o;
    o.dt = c.dt;
    o.t_final = c.t_final;
    o.tol = c.tol;
    o.max_norm = c.max_norm;
    o.prediction_dwell = c.prediction_dwell;
    o.early_stop = c.early_stop;
    o.disturbance.kind = c.noise_kind;
    o.disturbance.bound = c.noise_bound;
    o.disturbance.sigma = c.noise_sigma;
    o.disturbance.seed = c.seed;
    o.sampling.stride = c.sample_stride;
    return o;
}

}  // namespace dyadic
