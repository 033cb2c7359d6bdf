#pragma once

// Tokenizing helpers shared by the line-oriented parsers.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace dyadic::detail {

/// Whitespace-separated tokens of a line, '#' comments dropped.
std::vector<std::string> tokenize(const std::string& line);
/// Both throw ParseError(source, line, ...) on malformed input.
double to_double(const std::string& tok, const std::string& source, std::size_t line);
std::size_t to_index(const std::string& tok, const std::string& source, std::size_t line);
std::ifstream open_or_throw(const std::filesystem::path& path);

}  // namespace dyadic::detail
