#include "commands.hpp"

#include "summary.hpp"

#include "dyadic/balance.hpp"
#include "dyadic/io.hpp"
#include "dyadic/nash.hpp"
#include "dyadic/oracle/allocations.hpp"
#include "dyadic/oracle/matching.hpp"
#include "dyadic/stable.hpp"
#include "dyadic/wireless.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

namespace dyadic::cli {

using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

// Copy of the columns of `tr` named t or starting with one of `prefixes`.
void write_selected(const fs::path& path, const Trajectory& tr,
                    std::initializer_list<std::string> prefixes) {
    std::vector<std::size_t> keep;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < tr.columns().size(); ++c) {
        const auto& name = tr.columns()[c];
        bool wanted = name == "t";
        for (const auto& p : prefixes) {
            wanted = wanted || name.rfind(p, 0) == 0;
        }
        if (wanted) {
            keep.push_back(c);
            names.push_back(name);
        }
    }
    Trajectory sub(names);
    std::vector<double> row;
    for (std::size_t r = 0; r < tr.num_rows(); ++r) {
        row.clear();
        for (std::size_t c : keep) {
            row.push_back(tr.row(r)[c]);
        }
        sub.append(row);
    }
    auto out = open_out(path);
    sub.write_csv(out);
}

std::string pairs_text(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
    std::string out;
    for (EdgeId e : edges) {
        if (!out.empty()) {
            out += ' ';
        }
        out += std::to_string(g.edges()[e].u + 1) + "-" + std::to_string(g.edges()[e].v + 1);
    }
    return out;
}

int exit_for(RunStatus s) {
    switch (s) {
        case RunStatus::Converged:
            return kExitOk;
        case RunStatus::Diverged:
            return kExitDiverged;
        default:
            return kExitUndecided;
    }
}

// Max-norm distance from x to the nearest oracle allocation or continuum.
double distance_to(const std::vector<oracle::RationalVector>& points,
                   const std::vector<oracle::BalancedPiece>& pieces,
                   const std::vector<double>& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : points) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d = std::max(d, std::abs(oracle::to_double(a[i]) - x[i]));
        }
        best = std::min(best, d);
    }
    if (!pieces.empty()) {
        oracle::RationalVector ex;
        for (double v : x) {
            ex.push_back(oracle::from_double(v));
        }
        for (const auto& piece : pieces) {
            best = std::min(best, oracle::to_double(oracle::distance_to_piece(piece, ex)));
        }
    }
    return best;
}

json envelope(const std::string& command, const std::string& mode, const fs::path& graph,
              const RunConfig& config) {
    return json{{"schema", kSummarySchema},
                {"command", command},
                {"mode", mode},
                {"graph", graph.string()},
                {"config", config_json(config)}};
}

}  // namespace

int simulate(const SimulateArgs& args) {
    args.config.validate();
    const auto parsed = read_graph_file(args.graph);
    const auto& g = parsed.graph;
    fs::create_directories(args.out);
    json summary = envelope("simulate", args.mode, args.graph, args.config);
    const auto t0 = std::chrono::steady_clock::now();
    Trajectory trajectory;
    int code = kExitOk;
    std::string message;

    if (args.mode == "stable") {
        const auto run = run_stable(g, StableState::zeros(g), stable_options(args.config));
        summary.update(stable_summary(g, run));
        code = exit_for(run.status);
        message = run.message;
        trajectory = run.trajectory;
        if (args.emit_plot_data) {
            write_selected(args.out / "allocations.csv", trajectory, {"alpha_s_"});
            write_selected(args.out / "matching_states.csv", trajectory, {"m_"});
        }
    } else if (args.mode == "balanced") {
        if (!args.matching) {
            throw std::invalid_argument("balanced mode needs --matching");
        }
        const auto m = read_matching_file(g, *args.matching);
        summary["matching"] = args.matching->string();
        const auto run = run_balanced(g, m, std::vector<double>(g.num_vertices(), 0.0),
                                      balance_options(args.config));
        summary.update(balanced_summary(g, run));
        code = exit_for(run.status);
        message = run.message;
        trajectory = run.trajectory;
        if (args.emit_plot_data) {
            write_selected(args.out / "allocations.csv", trajectory, {"alpha_b_"});
        }
    } else if (args.mode == "nash") {
        const auto options = nash_options(args.config);
        const auto run = run_nash(g, NashState::zeros(g), options);
        summary.update(nash_summary(g, run));
        code = exit_for(run.status);
        message = run.message;
        trajectory = run.trajectory;
        if (args.emit_plot_data) {
            write_selected(args.out / "allocations.csv", trajectory, {"alpha_b_"});
            write_selected(args.out / "matching_states.csv", trajectory, {"m_"});
            if (options.disturbance.active()) {
                write_selected(args.out / "noisy_allocations.csv", trajectory, {"alpha_b_"});
            }
        }
    } else {
        throw std::invalid_argument("unknown mode '" + args.mode + "'");
    }

    summary["exit_code"] = code;
    summary["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    {
        auto out = open_out(args.out / "trajectory.csv");
        trajectory.write_csv(out);
    }
    write_json(args.out / "summary.json", summary);
    std::cout << summary["status"].get<std::string>() << '\n';
    if (code != kExitOk && !message.empty()) {
        std::cerr << message << '\n';
    }
    return code;
}

int verify(const VerifyArgs& args) {
    static const std::vector<std::string> claims{"valid", "stable", "balanced", "nash"};
    if (std::find(claims.begin(), claims.end(), args.claim) == claims.end()) {
        throw std::invalid_argument("unknown claim '" + args.claim + "'");
    }
    const auto parsed = read_graph_file(args.graph);
    const auto& g = parsed.graph;
    const auto o = read_outcome_file(g, args.outcome);

    const bool valid = is_valid_outcome(g, o, args.tol);
    const bool stable = is_stable(g, o, args.tol);
    const bool balanced = is_balanced(g, o, args.tol);
    const bool nash = is_nash(g, o, args.tol);
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "valid     " << yes(valid) << '\n'
              << "stable    " << yes(stable) << '\n'
              << "balanced  " << yes(balanced) << '\n'
              << "nash      " << yes(nash) << '\n';

    const auto eg = oracle::ExactGraph::from_parsed(parsed);
    if (eg.num_edges() <= oracle::kMaxRelaxationEdges) {
        const auto res = oracle::nash_oracle(eg);
        oracle::Rational w = 0;
        for (EdgeId e : o.matching.edges()) {
            w += eg.edges()[e].w;
        }
        std::cout << "oracle: maximum matching weight " << res.mwm.weight.str()
                  << (res.mwm.unique ? " (unique)" : " (not unique)") << ", relaxation "
                  << (res.relaxation.integral ? "integral" : "fractional") << " with value "
                  << res.relaxation.value.str() << '\n'
                  << "oracle: outcome matching is " << (w == res.mwm.weight ? "" : "not ")
                  << "maximum\n";
        if (res.nash.empty() && res.nash_pieces.empty()) {
            std::cout << "oracle: no Nash allocation on the maximum weight matching\n";
        } else {
            std::cout << "oracle: nearest Nash allocation at distance "
                      << format_number(distance_to(res.nash, res.nash_pieces, o.alloc)) << '\n';
        }
    } else {
        std::cout << "oracle: skipped (" << eg.num_edges() << " edges)\n";
    }

    const bool confirmed = args.claim == "valid"      ? valid
                           : args.claim == "stable"   ? stable
                           : args.claim == "balanced" ? balanced
                                                      : nash;
    std::cout << "claim " << args.claim << ": " << (confirmed ? "confirmed" : "refuted") << '\n';
    return confirmed ? kExitOk : kExitUndecided;
}

int scenario_gen(const ScenarioGenArgs& args) {
    const auto sc = read_scenario_file(args.scenario);
    const auto g = build_graph(sc);
    if (args.out) {
        auto out = open_out(*args.out);
        out << "# generated from " << args.scenario.string() << '\n';
        write_graph(out, g);
    } else {
        std::cout << "# generated from " << args.scenario.string() << '\n';
        write_graph(std::cout, g);
    }
    return kExitOk;
}

int report(const ReportArgs& args) {
    const auto sc = read_scenario_file(args.scenario);
    const auto g = build_graph(sc);
    std::vector<double> alloc;
    int code = kExitOk;
    if (args.outcome) {
        alloc = read_outcome_file(g, *args.outcome).alloc;
    } else {
        args.config.validate();
        auto options = nash_options(args.config);
        options.sampling.record = false;
        const auto run = run_nash(g, NashState::zeros(g), options);
        alloc = run.final_state.alpha_b;
        code = exit_for(run.status);
        if (run.outcome) {
            std::cout << "pairs: " << pairs_text(g, run.outcome->matching.edges()) << '\n';
        }
    }
    const auto rep = improvement_report(sc, alloc);
    write_report_text(std::cout, rep);
    if (args.csv) {
        auto out = open_out(*args.csv);
        write_report_csv(out, rep);
    }
    return code;
}

namespace {

struct SweepRow {
    std::string file;
    std::string status;
    bool settled = false;
    double settle_time = 0.0;
    std::string matching;
    std::string oracle_matching;
    bool mwm_unique = false;
    bool integral = false;
    bool nash = false;
    double distance = std::numeric_limits<double>::quiet_NaN();
    bool pass = false;
    std::string error;
};

SweepRow sweep_one(const fs::path& file, const SweepArgs& args) {
    SweepRow row;
    row.file = file.filename().string();
    try {
        const auto parsed = read_graph_file(file);
        const auto& g = parsed.graph;
        auto options = nash_options(args.config);
        options.sampling.record = args.runs_dir.has_value();
        const auto run = run_nash(g, NashState::zeros(g), options);
        row.status = to_string(run.status);
        row.settled = run.settled;
        row.settle_time = run.settle_time;
        row.nash = run.nash;
        if (run.outcome) {
            row.matching = pairs_text(g, run.outcome->matching.edges());
        }
        if (args.runs_dir) {
            const auto dir = *args.runs_dir / file.stem();
            fs::create_directories(dir);
            auto out = open_out(dir / "trajectory.csv");
            run.trajectory.write_csv(out);
            json summary = envelope("sweep", "nash", file, args.config);
            summary.update(nash_summary(g, run));
            write_json(dir / "summary.json", summary);
        }
        const auto res = oracle::nash_oracle(oracle::ExactGraph::from_parsed(parsed));
        row.oracle_matching = pairs_text(g, res.mwm.edges);
        row.mwm_unique = res.mwm.unique;
        row.integral = res.relaxation.integral;
        row.distance = distance_to(res.balanced, res.balanced_pieces, run.final_state.alpha_b);
        row.pass = run.settled && run.outcome && run.outcome->matching.edges() == res.mwm.edges &&
                   run.nash && row.distance < 1e-2;
    } catch (const std::exception& e) {
        row.error = e.what();
        row.pass = false;
    }
    return row;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

int sweep(const SweepArgs& args) {
    args.config.validate();
    if (!fs::is_directory(args.dir)) {
        throw std::invalid_argument("not a directory: " + args.dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".grf") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<SweepRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = args.threads ? args.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < files.size(); k = next++) {
                rows[k] = sweep_one(files[k], args);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }

    auto out = open_out(args.out);
    out << "file,status,settled,settle_time,matching,oracle_matching,mwm_unique,"
           "relaxation_integral,is_nash,balanced_distance,pass,error\n";
    std::size_t passed = 0;
    for (const auto& r : rows) {
        passed += r.pass ? 1 : 0;
        out << csv_field(r.file) << ',' << r.status << ',' << r.settled << ','
            << (r.settled ? format_number(r.settle_time) : "") << ',' << csv_field(r.matching)
            << ',' << csv_field(r.oracle_matching) << ',' << r.mwm_unique << ',' << r.integral
            << ',' << r.nash << ',' << (std::isnan(r.distance) ? "" : format_number(r.distance))
            << ',' << r.pass << ',' << csv_field(r.error) << '\n';
    }
    std::cout << passed << "/" << rows.size() << " graphs passed\n";
    return passed == rows.size() ? kExitOk : kExitUndecided;
}

}  // namespace dyadic::cli
