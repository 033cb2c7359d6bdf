#pragma once

// Nash cascade: the stable dynamics runs unchanged, every agent predicts its
// partner from the matching states m, and an agent balances its allocation
// alpha^b only while it and its predicted partner predict each other.
// Otherwise alpha^b decays to zero.

#include "dyadic/graph.hpp"
#include "dyadic/stable.hpp"
#include "dyadic/trajectory.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

struct NashState {
    StableState stable;
    std::vector<double> alpha_b;

    [[nodiscard]] static NashState zeros(const WeightedGraph& g);
    void check_shape(const WeightedGraph& g) const;
};

using NashRates = NashState;

/// Neighbor j with |m_ij - 1| strictly smaller than for every other neighbor;
/// nullopt on ties or for an isolated vertex.
[[nodiscard]] std::optional<Vertex> predict_partner(const WeightedGraph& g,
                                                    std::span<const double> m, Vertex i);

/// Mutual predictions as a partner map (nullopt where i is not paired).
[[nodiscard]] std::vector<std::optional<Vertex>> mutual_pairing(const WeightedGraph& g,
                                                                std::span<const double> m);

/// Stable components follow stable_rhs; alpha^b balances under mutual
/// prediction and decays otherwise. Throws StateError on negative alpha_s or s.
[[nodiscard]] NashRates nash_rhs(const WeightedGraph& g, const NashState& st);

enum class NoiseKind { None, Uniform, Gauss };
[[nodiscard]] const char* to_string(NoiseKind k);
/// Accepts "none", "uniform", "gauss"; throws std::invalid_argument otherwise.
[[nodiscard]] NoiseKind parse_noise_kind(const std::string& s);

/// Bounded additive disturbances d1..d5: d1..d4 perturb the inputs alpha_s,
/// alpha_b, s, m of the vector field, d5 is added to its output.
struct Disturbance {
    NoiseKind kind = NoiseKind::None;
    double bound = 0.0;   ///< |d|_inf <= bound for every channel and time
    double sigma = 0.01;  ///< Gauss only; samples beyond bound are redrawn
    std::uint64_t seed = 0;
    std::array<bool, 5> channels{true, true, true, true, true};

    [[nodiscard]] bool active() const { return kind != NoiseKind::None && bound > 0.0; }
    /// Throws std::invalid_argument on negative bound or nonpositive sigma.
    void validate() const;
};

/// Seeded generator honoring a Disturbance's contract.
class DisturbanceSource {
public:
    explicit DisturbanceSource(const Disturbance& d);
    [[nodiscard]] double draw();
    void fill(std::vector<double>& out, bool enabled);

private:
    Disturbance d_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> uniform_;
    std::normal_distribution<double> normal_;
};

struct NashOptions {
    double dt = 1e-3;
    double t_final = 100.0;
    double tol = 1e-3;  ///< is_nash tolerance for a converged verdict
    double max_norm = 1e9;
    /// The pairing must not change within this trailing fraction of the horizon.
    double settle_fraction = 0.1;
    /// Hold each prediction for at least this many steps before switching
    /// (0 switches immediately).
    std::size_t prediction_dwell = 0;
    /// Stop once every rate stays below stop_rate for stop_window steps; the
    /// pairing is then frozen for the rest of the horizon. Off under noise.
    bool early_stop = true;
    double stop_rate = 1e-7;
    std::size_t stop_window = 1000;
    Disturbance disturbance{};
    SamplingOptions sampling{};
};

struct NashRun {
    RunStatus status = RunStatus::Unsettled;
    std::string message;
    NashState final_state;
    bool settled = false;
    /// Time after which the mutual pairing stayed constant.
    double settle_time = 0.0;
    std::size_t pairing_changes = 0;
    /// Settled pairing as a matching, with alloc = alpha^b at the final time.
    std::optional<Outcome> outcome;
    double stability_residual = 0.0;
    double balance_residual = 0.0;
    double validity_residual = 0.0;
    bool nash = false;
    double t_end = 0.0;
    /// Columns t, alpha_s_<i>, s_<i>_<j>, m_<i>_<j>, alpha_b_<i>, pred_<i>
    /// (predicted partner, 1-based, 0 for none).
    Trajectory trajectory;
};

[[nodiscard]] NashRun run_nash(const WeightedGraph& g, NashState st0, const NashOptions& options);

}  // namespace dyadic
