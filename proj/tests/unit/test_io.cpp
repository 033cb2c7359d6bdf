#include "dyadic/io.hpp"
#include "dyadic/trajectory.hpp"

#include "support/graphs.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace dyadic;

namespace {

ParsedGraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in, "test.grf");
}

std::size_t error_line(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("no ParseError raised");
    return 0;
}

}  // namespace

TEST_CASE("graph files: records, comments and 1-based ids") {
    const auto pg = parse("# path\nn 3\n\ne 1 2 1.2   # heavy\ne 2 3 1\n");
    CHECK(pg.graph.num_vertices() == 3);
    CHECK(pg.graph.num_edges() == 2);
    CHECK(pg.graph.weight(0, 1) == 1.2);
    CHECK(pg.graph.weight(1, 2) == 1.0);
    CHECK(pg.weight_literals == std::vector<std::string>{"1.2", "1"});
}

TEST_CASE("graph files: errors carry the offending line") {
    CHECK(error_line("n 3\ne 1 1 1\n") == 2);
    CHECK(error_line("n 3\ne 1 2 1\n# ok\ne 2 1 3\n") == 4);
    CHECK(error_line("n 3\ne 1 2 -1\n") == 2);
    CHECK(error_line("n 3\ne 1 4 1\n") == 2);
    CHECK(error_line("n 3\ne 0 2 1\n") == 2);
    CHECK(error_line("e 1 2 1\n") == 1);
    CHECK(error_line("n 3\nn 3\n") == 2);
    CHECK(error_line("n 3\ne 1 2\n") == 2);
    CHECK(error_line("n 3\ne 1 2 abc\n") == 2);
    CHECK(error_line("n 3\ne 1 2 nan\n") == 2);
    CHECK(error_line("n 3\nx 1\n") == 2);
    CHECK(error_line("# nothing\n") == 1);
}

TEST_CASE("ParseError message names source and line") {
    try {
        (void)parse("n 2\ne 1 2 -3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.source() == "test.grf");
        CHECK(std::string(e.what()).find("test.grf:2:") == 0);
    }
}

TEST_CASE("graph write/parse round trip is exact") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const auto g = testing::random_graph(rng, 6, 0.6, 0.0, 5.0);
        std::ostringstream out;
        write_graph(out, g);
        const auto back = parse(out.str());
        REQUIRE(back.graph.num_edges() == g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            CHECK(back.graph.edge(e).u == g.edge(e).u);
            CHECK(back.graph.edge(e).v == g.edge(e).v);
            CHECK(back.graph.edge(e).w == g.edge(e).w);
        }
    }
}

TEST_CASE("matching and outcome files") {
    const auto g = testing::path3();
    {
        std::istringstream in("m 2 1\n");
        const auto m = parse_matching(in, g);
        CHECK(m.partner(0) == 1u);
    }
    {
        std::istringstream in("m 1 2\nm 2 3\n");
        CHECK_THROWS_AS((void)parse_matching(in, g), ParseError);
    }
    {
        std::istringstream in("m 1 3\n");
        CHECK_THROWS_AS((void)parse_matching(in, g), ParseError);
    }
    {
        std::istringstream in("m 1 2\na 0.1 1.1 0\n");
        const auto o = parse_outcome(in, g);
        CHECK(o.alloc == std::vector<double>{0.1, 1.1, 0.0});
        std::ostringstream out;
        write_outcome(out, g, o);
        CHECK(out.str() == "m 1 2\na 0.1 1.1 0\n");
    }
    {
        std::istringstream in("m 1 2\n");
        CHECK_THROWS_AS((void)parse_outcome(in, g), ParseError);
    }
    {
        std::istringstream in("m 1 2\na 0.1 1.1\n");
        CHECK_THROWS_AS((void)parse_outcome(in, g), ParseError);
    }
}

TEST_CASE("missing files raise ParseError") {
    CHECK_THROWS_AS((void)read_graph_file("/nonexistent/graph.grf"), ParseError);
}

TEST_CASE("format_number is shortest round-trip") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-10) == "-2.5e-10");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int k = 0; k < 1000; ++k) {
        const double x = d(rng);
        CHECK(std::stod(format_number(x)) == x);
    }
}

TEST_CASE("trajectory table") {
    Trajectory tr({"t", "x"});
    tr.append(std::vector<double>{0.0, 1.0});
    tr.append(std::vector<double>{0.5, 0.25});
    CHECK_THROWS_AS(tr.append(std::vector<double>{1.0}), std::invalid_argument);
    CHECK(tr.num_rows() == 2);
    CHECK(tr.column("x") == std::vector<double>{1.0, 0.25});
    CHECK_THROWS_AS((void)tr.column_index("y"), std::out_of_range);
    std::ostringstream out;
    tr.write_csv(out);
    CHECK(out.str() == "t,x\n0,1\n0.5,0.25\n");
}
