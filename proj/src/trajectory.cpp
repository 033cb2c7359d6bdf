#include "dyadic/trajectory.hpp"

#include "dyadic/io.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace dyadic {

Trajectory::Trajectory(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Trajectory::append(std::span<const double> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("trajectory row has " + std::to_string(row.size()) +
                                    " values, expected " + std::to_string(columns_.size()));
    }
    rows_.emplace_back(row.begin(), row.end());
}

std::size_t Trajectory::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) {
        throw std::out_of_range("no trajectory column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> Trajectory::column(const std::string& name) const {
    const auto c = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        out.push_back(r[c]);
    }
    return out;
}

void Trajectory::write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        out << (c ? "," : "") << columns_[c];
    }
    out << '\n';
    for (const auto& r : rows_) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            out << (c ? "," : "") << format_number(r[c]);
        }
        out << '\n';
    }
}

}  // namespace dyadic
