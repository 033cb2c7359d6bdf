#include "dyadic/io.hpp"

#include "dyadic/detail/text.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace dyadic {

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

namespace detail {

// Splits a line into whitespace-separated tokens, dropping '#' comments.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    const auto hash = line.find('#');
    std::istringstream ss(line.substr(0, hash));
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

double to_double(const std::string& tok, const std::string& source, std::size_t line) {
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(source, line, "expected a number, got '" + tok + "'");
    }
    return v;
}

std::size_t to_index(const std::string& tok, const std::string& source, std::size_t line) {
    std::size_t v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(source, line, "expected a vertex id, got '" + tok + "'");
    }
    return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    return in;
}

}  // namespace detail

namespace {

using detail::open_or_throw;
using detail::to_double;
using detail::to_index;
using detail::tokenize;

Vertex to_vertex(const std::string& tok, std::size_t n, const std::string& source,
                 std::size_t line) {
    const auto v = to_index(tok, source, line);
    if (v < 1 || v > n) {
        throw ParseError(source, line,
                         "vertex " + tok + " out of range 1.." + std::to_string(n));
    }
    return v - 1;
}

}  // namespace

ParsedGraph parse_graph(std::istream& in, const std::string& source) {
    ParsedGraph out;
    bool have_n = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = tokenize(line);
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "n") {
            if (have_n) {
                throw ParseError(source, lineno, "duplicate 'n' header");
            }
            if (tok.size() != 2) {
                throw ParseError(source, lineno, "expected 'n <count>'");
            }
            out.graph = WeightedGraph(to_index(tok[1], source, lineno));
            have_n = true;
        } else if (tok[0] == "e") {
            if (!have_n) {
                throw ParseError(source, lineno, "edge before 'n' header");
            }
            if (tok.size() != 4) {
                throw ParseError(source, lineno, "expected 'e <i> <j> <w>'");
            }
            const auto n = out.graph.num_vertices();
            const Vertex i = to_vertex(tok[1], n, source, lineno);
            const Vertex j = to_vertex(tok[2], n, source, lineno);
            const double w = to_double(tok[3], source, lineno);
            if (i == j) {
                throw ParseError(source, lineno, "self-loop at vertex " + tok[1]);
            }
            if (w < 0.0) {
                throw ParseError(source, lineno, "negative weight " + tok[3]);
            }
            if (out.graph.find_edge(i, j)) {
                throw ParseError(source, lineno, "duplicate edge (" + tok[1] + ", " + tok[2] + ")");
            }
            try {
                out.graph.add_edge(i, j, w);
            } catch (const GraphError& e) {
                throw ParseError(source, lineno, e.what());
            }
            out.weight_literals.push_back(tok[3]);
        } else {
            throw ParseError(source, lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!have_n) {
        throw ParseError(source, lineno, "missing 'n <count>' header");
    }
    return out;
}

ParsedGraph read_graph_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_graph(in, path.string());
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << "n " << g.num_vertices() << '\n';
    for (const Edge& e : g.edges()) {
        out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_number(e.w) << '\n';
    }
}

namespace {

struct OutcomeRecords {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::optional<std::vector<double>> alloc;
};

OutcomeRecords parse_records(std::istream& in, std::size_t n, bool allow_alloc,
                             const std::string& source) {
    OutcomeRecords rec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = tokenize(line);
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "m") {
            if (tok.size() != 3) {
                throw ParseError(source, lineno, "expected 'm <i> <j>'");
            }
            rec.pairs.emplace_back(to_vertex(tok[1], n, source, lineno),
                                   to_vertex(tok[2], n, source, lineno));
        } else if (tok[0] == "a" && allow_alloc) {
            if (rec.alloc) {
                throw ParseError(source, lineno, "duplicate allocation line");
            }
            if (tok.size() != n + 1) {
                throw ParseError(source, lineno,
                                 "allocation needs " + std::to_string(n) + " values");
            }
            std::vector<double> a;
            for (std::size_t k = 1; k < tok.size(); ++k) {
                a.push_back(to_double(tok[k], source, lineno));
            }
            rec.alloc = std::move(a);
        } else {
            throw ParseError(source, lineno, "unknown record '" + tok[0] + "'");
        }
    }
    return rec;
}

Matching build_matching(const WeightedGraph& g, std::span<const std::pair<Vertex, Vertex>> pairs,
                        const std::string& source) {
    try {
        return Matching::from_pairs(g, pairs);
    } catch (const GraphError& e) {
        throw ParseError(source, 0, std::string("invalid matching: ") + e.what());
    }
}

}  // namespace

Matching parse_matching(std::istream& in, const WeightedGraph& g, const std::string& source) {
    const auto rec = parse_records(in, g.num_vertices(), false, source);
    return build_matching(g, rec.pairs, source);
}

Matching read_matching_file(const WeightedGraph& g, const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_matching(in, g, path.string());
}

Outcome parse_outcome(std::istream& in, const WeightedGraph& g, const std::string& source) {
    auto rec = parse_records(in, g.num_vertices(), true, source);
    if (!rec.alloc) {
        throw ParseError(source, 0, "missing allocation line 'a ...'");
    }
    return Outcome{build_matching(g, rec.pairs, source), std::move(*rec.alloc)};
}

Outcome read_outcome_file(const WeightedGraph& g, const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_outcome(in, g, path.string());
}

void write_outcome(std::ostream& out, const WeightedGraph& g, const Outcome& o) {
    for (EdgeId e : o.matching.edges()) {
        out << "m " << g.edge(e).u + 1 << ' ' << g.edge(e).v + 1 << '\n';
    }
    out << 'a';
    for (double a : o.alloc) {
        out << ' ' << format_number(a);
    }
    out << '\n';
}

std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace dyadic
