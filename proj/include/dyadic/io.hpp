#pragma once

// Line-oriented text formats. All vertex ids in files are 1-based.
//
//   graph:    n <count> / e <i> <j> <w>
//   matching: m <i> <j>
//   outcome:  m <i> <j> ... / a <alpha_1> ... <alpha_n>
//
// Blank lines and '#' comments are ignored everywhere.

#include "dyadic/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what);

    [[nodiscard]] const std::string& source() const { return source_; }
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

struct ParsedGraph {
    WeightedGraph graph;
    /// Weight tokens exactly as written, indexed by EdgeId. The oracles parse
    /// these as exact decimals.
    std::vector<std::string> weight_literals;
};

[[nodiscard]] ParsedGraph parse_graph(std::istream& in, const std::string& source = "<graph>");
[[nodiscard]] ParsedGraph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

[[nodiscard]] Matching parse_matching(std::istream& in, const WeightedGraph& g,
                                      const std::string& source = "<matching>");
[[nodiscard]] Matching read_matching_file(const WeightedGraph& g,
                                          const std::filesystem::path& path);

[[nodiscard]] Outcome parse_outcome(std::istream& in, const WeightedGraph& g,
                                    const std::string& source = "<outcome>");
[[nodiscard]] Outcome read_outcome_file(const WeightedGraph& g,
                                        const std::filesystem::path& path);
void write_outcome(std::ostream& out, const WeightedGraph& g, const Outcome& o);

/// Shortest round-trip decimal form; used for every numeric field we write so
/// that output is byte-for-byte reproducible.
[[nodiscard]] std::string format_number(double x);

}  // namespace dyadic
