#pragma once

// One record holding every run parameter, so that a summary can echo exactly
// what produced it.

#include "dyadic/balance.hpp"
#include "dyadic/nash.hpp"
#include "dyadic/stable.hpp"

#include <cstdint>

namespace dyadic {

struct RunConfig {
    double dt = 1e-3;
    double t_final = 100.0;
    double tol = 1e-4;
    std::size_t sample_stride = 100;
    std::uint64_t seed = 0;
    NoiseKind noise_kind = NoiseKind::None;
    double noise_bound = 0.0;
    double noise_sigma = 0.01;
    double threshold = 0.25;
    double max_norm = 1e9;
    std::size_t prediction_dwell = 0;
    bool early_stop = true;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

[[nodiscard]] StableOptions stable_options(const RunConfig& c);
[[nodiscard]] BalanceOptions balance_options(const RunConfig& c);
[[nodiscard]] NashOptions nash_options(const RunConfig& c);

}  // namespace dyadic
