#pragma once

// Multi-user TDMA uplink: devices share transmission time with a partner to
// reach the base station at a higher joint rate. Physical constants are 1 and
// logarithms are natural.
//
// Scenario file:
//   bs <x> <y>
//   dev <id> <x> <y> <rho>      ids 1..n, each exactly once
//   pmax <v>

#include "dyadic/graph.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

using Point = std::array<double, 2>;

struct Device {
    Point pos{};
    double rho = 0.0;
};

struct WirelessScenario {
    Point base{0.0, 0.0};
    std::vector<Device> devices;  ///< device k + 1 is devices[k]
    double p_max = 0.0;

    /// Throws std::invalid_argument when a device sits on the base station,
    /// some rho is outside [0, 1], the rho sum exceeds 1, or p_max <= 0.
    void validate() const;
};

/// ln(1 + 1/|x|); throws std::invalid_argument for |x| = 0.
[[nodiscard]] double capacity(double distance);
[[nodiscard]] double capacity(const Point& x);
/// ln(1 + 1/|x_i| + 1/|x_j|).
[[nodiscard]] double pair_capacity(double di, double dj);
[[nodiscard]] double pair_capacity(const Point& xi, const Point& xj);
/// |x_i - x_j|.
[[nodiscard]] double pairing_power(const Point& xi, const Point& xj);

/// Edge (i, j) iff pairing_power <= p_max, weight
/// (rho_i + rho_j) c_ij - rho_i c_i - rho_j c_j.
[[nodiscard]] WeightedGraph build_graph(const WirelessScenario& sc);

struct ImprovementRow {
    std::size_t device = 0;  ///< 1-based
    double capacity = 0.0;
    double alloc = 0.0;
    double percent = 0.0;
};

struct NetworkRow {
    double capacity = 0.0;
    double alloc = 0.0;
    double percent = 0.0;  ///< 100 * alloc / capacity of this row
};

struct ImprovementReport {
    std::vector<ImprovementRow> rows;
    NetworkRow mean;           ///< unweighted means over devices
    NetworkRow rho_weighted;   ///< means weighted by rho
};

/// Throws std::invalid_argument when alloc does not have one entry per device.
[[nodiscard]] ImprovementReport improvement_report(const WirelessScenario& sc,
                                                   std::span<const double> alloc);
void write_report_text(std::ostream& out, const ImprovementReport& r);
void write_report_csv(std::ostream& out, const ImprovementReport& r);

[[nodiscard]] WirelessScenario parse_scenario(std::istream& in,
                                              const std::string& source = "<scenario>");
[[nodiscard]] WirelessScenario read_scenario_file(const std::filesystem::path& path);

}  // namespace dyadic
