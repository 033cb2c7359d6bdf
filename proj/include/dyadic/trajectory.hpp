#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

/// Time-indexed table of sampled states and diagnostics. Column 0 is always
/// "t".
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::vector<std::string> columns);

    /// Throws std::invalid_argument when the row width does not match.
    void append(std::span<const double> row);

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
    [[nodiscard]] bool empty() const { return rows_.empty(); }
    [[nodiscard]] const std::vector<double>& row(std::size_t r) const { return rows_.at(r); }
    [[nodiscard]] const std::vector<double>& back() const { return rows_.back(); }
    /// Index of a named column; throws std::out_of_range if absent.
    [[nodiscard]] std::size_t column_index(const std::string& name) const;
    [[nodiscard]] std::vector<double> column(const std::string& name) const;

    void write_csv(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Controls sampling of integration steps into a Trajectory.
struct SamplingOptions {
    std::size_t stride = 100;  ///< record every `stride` steps (first and last always)
    bool record = true;
};

}  // namespace dyadic
