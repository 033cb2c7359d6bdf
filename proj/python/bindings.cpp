#include "summary.hpp"

#include "dyadic/config.hpp"
#include "dyadic/io.hpp"
#include "dyadic/oracle/allocations.hpp"
#include "dyadic/wireless.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace dyadic;

namespace {

using Pair = std::pair<Vertex, Vertex>;

std::vector<Pair> to_zero_based(const std::vector<Pair>& pairs) {
    std::vector<Pair> out;
    for (auto [i, j] : pairs) {
        if (i == 0 || j == 0) {
            throw GraphError("vertex ids are 1-based");
        }
        out.emplace_back(i - 1, j - 1);
    }
    return out;
}

std::vector<Pair> to_pairs(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
    std::vector<Pair> out;
    for (EdgeId e : edges) {
        out.emplace_back(g.edge(e).u + 1, g.edge(e).v + 1);
    }
    return out;
}

Outcome make_outcome(const WeightedGraph& g, const std::vector<Pair>& pairs,
                     std::vector<double> alloc) {
    const auto zb = to_zero_based(pairs);
    return Outcome{Matching::from_pairs(g, zb), std::move(alloc)};
}

// Round-trip through the text format so the oracle sees the shortest decimal
// literal of every weight rather than its binary expansion.
oracle::ExactGraph exact(const WeightedGraph& g) {
    std::stringstream s;
    write_graph(s, g);
    return oracle::ExactGraph::from_parsed(parse_graph(s));
}

std::vector<double> to_doubles(const oracle::RationalVector& v) {
    std::vector<double> out;
    for (const auto& x : v) {
        out.push_back(oracle::to_double(x));
    }
    return out;
}

py::tuple trajectory_tuple(const Trajectory& t) {
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
        rows.push_back(t.row(r));
    }
    return py::make_tuple(t.columns(), rows);
}

// Summary as JSON text plus the trajectory; the package wrapper decodes both.
py::tuple simulate(const WeightedGraph& g, const std::string& mode,
                   const std::optional<std::vector<Pair>>& matching, const RunConfig& config) {
    config.validate();
    nlohmann::json summary{{"schema", cli::kSummarySchema},
                           {"mode", mode},
                           {"config", cli::config_json(config)}};
    Trajectory trajectory;
    {
        py::gil_scoped_release release;
        if (mode == "stable") {
            auto run = run_stable(g, StableState::zeros(g), stable_options(config));
            summary.update(cli::stable_summary(g, run));
            trajectory = std::move(run.trajectory);
        } else if (mode == "balanced") {
            if (!matching) {
                throw std::invalid_argument("balanced mode needs a matching");
            }
            const auto m = Matching::from_pairs(g, to_zero_based(*matching));
            auto run = run_balanced(g, m, std::vector<double>(g.num_vertices(), 0.0),
                                    balance_options(config));
            summary.update(cli::balanced_summary(g, run));
            trajectory = std::move(run.trajectory);
        } else if (mode == "nash") {
            auto run = run_nash(g, NashState::zeros(g), nash_options(config));
            summary.update(cli::nash_summary(g, run));
            trajectory = std::move(run.trajectory);
        } else {
            throw std::invalid_argument("unknown mode '" + mode + "'");
        }
    }
    return py::make_tuple(summary.dump(), trajectory_tuple(trajectory));
}

}  // namespace

PYBIND11_MODULE(_dyadic, m) {
    m.doc() = "Bargaining dynamics on weighted graphs (vertex ids are 1-based)";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<oracle::SizeError>(m, "SizeError", PyExc_ValueError);

    py::class_<WeightedGraph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def(
            "add_edge",
            [](WeightedGraph& g, Vertex i, Vertex j, double w) {
                if (i == 0 || j == 0) {
                    throw GraphError("vertex ids are 1-based");
                }
                return g.add_edge(i - 1, j - 1, w);
            },
            py::arg("i"), py::arg("j"), py::arg("w"))
        .def_property_readonly("num_vertices", &WeightedGraph::num_vertices)
        .def_property_readonly("num_edges", &WeightedGraph::num_edges)
        .def("edges",
             [](const WeightedGraph& g) {
                 std::vector<std::tuple<Vertex, Vertex, double>> out;
                 for (const auto& e : g.edges()) {
                     out.emplace_back(e.u + 1, e.v + 1, e.w);
                 }
                 return out;
             })
        .def("weight",
             [](const WeightedGraph& g, Vertex i, Vertex j) { return g.weight(i - 1, j - 1); })
        .def("__repr__", [](const WeightedGraph& g) {
            return "<Graph n=" + std::to_string(g.num_vertices()) +
                   " edges=" + std::to_string(g.num_edges()) + ">";
        });

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("dt", &RunConfig::dt)
        .def_readwrite("t_final", &RunConfig::t_final)
        .def_readwrite("tol", &RunConfig::tol)
        .def_readwrite("sample_stride", &RunConfig::sample_stride)
        .def_readwrite("seed", &RunConfig::seed)
        .def_property(
            "noise_kind", [](const RunConfig& c) { return std::string(to_string(c.noise_kind)); },
            [](RunConfig& c, const std::string& s) { c.noise_kind = parse_noise_kind(s); })
        .def_readwrite("noise_bound", &RunConfig::noise_bound)
        .def_readwrite("noise_sigma", &RunConfig::noise_sigma)
        .def_readwrite("threshold", &RunConfig::threshold)
        .def_readwrite("max_norm", &RunConfig::max_norm)
        .def_readwrite("prediction_dwell", &RunConfig::prediction_dwell)
        .def_readwrite("early_stop", &RunConfig::early_stop)
        .def("validate", &RunConfig::validate);

    m.def("read_graph", [](const std::filesystem::path& p) { return read_graph_file(p).graph; },
          py::arg("path"));

    m.def("_simulate", &simulate, py::arg("graph"), py::arg("mode"), py::arg("matching"),
          py::arg("config"));

    m.def(
        "predicates",
        [](const WeightedGraph& g, const std::vector<Pair>& pairs, std::vector<double> alloc,
           double tol) {
            const auto o = make_outcome(g, pairs, std::move(alloc));
            py::dict d;
            d["valid"] = is_valid_outcome(g, o, tol);
            d["stable"] = is_stable(g, o, tol);
            d["balanced"] = is_balanced(g, o, tol);
            d["nash"] = is_nash(g, o, tol);
            return d;
        },
        py::arg("graph"), py::arg("matching"), py::arg("alloc"), py::arg("tol") = 1e-6);

    m.def(
        "max_weight_matching",
        [](const WeightedGraph& g) {
            const auto r = oracle::max_weight_matching(exact(g));
            py::dict d;
            d["matching"] = to_pairs(g, r.edges);
            d["weight"] = r.weight.str();
            d["unique"] = r.unique;
            return d;
        },
        py::arg("graph"));

    m.def(
        "nash_oracle",
        [](const WeightedGraph& g) {
            const auto r = oracle::nash_oracle(exact(g));
            py::dict d;
            d["matching"] = to_pairs(g, r.mwm.edges);
            d["weight"] = r.mwm.weight.str();
            d["mwm_unique"] = r.mwm.unique;
            d["relaxation_value"] = r.relaxation.value.str();
            d["relaxation_integral"] = r.relaxation.integral;
            std::vector<std::vector<double>> nash;
            for (const auto& a : r.nash) {
                nash.push_back(to_doubles(a));
            }
            d["nash"] = nash;
            d["nash_pieces"] = r.nash_pieces.size();
            d["balanced_count"] = r.balanced.size();
            d["unstable_balanced"] = r.unstable_balanced;
            return d;
        },
        py::arg("graph"));

    m.def(
        "scenario_graph",
        [](const std::filesystem::path& p) { return build_graph(read_scenario_file(p)); },
        py::arg("path"));

    m.def(
        "improvement_report",
        [](const std::filesystem::path& p, const std::vector<double>& alloc) {
            const auto rep = improvement_report(read_scenario_file(p), alloc);
            py::list rows;
            for (const auto& r : rep.rows) {
                py::dict d;
                d["device"] = r.device;
                d["capacity"] = r.capacity;
                d["alloc"] = r.alloc;
                d["percent"] = r.percent;
                rows.append(d);
            }
            auto net = [](const NetworkRow& r) {
                py::dict d;
                d["capacity"] = r.capacity;
                d["alloc"] = r.alloc;
                d["percent"] = r.percent;
                return d;
            };
            py::dict out;
            out["rows"] = rows;
            out["mean"] = net(rep.mean);
            out["rho_weighted"] = net(rep.rho_weighted);
            return out;
        },
        py::arg("path"), py::arg("alloc"));
}
