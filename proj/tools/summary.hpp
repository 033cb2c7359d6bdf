#pragma once

// JSON run summaries, schema 1.

#include "dyadic/balance.hpp"
#include "dyadic/config.hpp"
#include "dyadic/nash.hpp"
#include "dyadic/stable.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dyadic::cli {

inline constexpr int kSummarySchema = 1;

[[nodiscard]] nlohmann::json config_json(const RunConfig& c);
/// Matching as 1-based pairs and the allocation.
[[nodiscard]] nlohmann::json outcome_json(const WeightedGraph& g, const Outcome& o);

[[nodiscard]] nlohmann::json stable_summary(const WeightedGraph& g, const StableRun& run);
[[nodiscard]] nlohmann::json balanced_summary(const WeightedGraph& g, const BalancedRun& run);
[[nodiscard]] nlohmann::json nash_summary(const WeightedGraph& g, const NashRun& run);

}  // namespace dyadic::cli
