#include "commands.hpp"

#include "dyadic/nash.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace dyadic;
using namespace dyadic::cli;

void add_config_flags(CLI::App* app, RunConfig& c, std::string& noise_kind, bool& no_early_stop) {
    app->add_option("--dt", c.dt, "Euler step")->capture_default_str();
    app->add_option("--t-final", c.t_final, "Horizon")->capture_default_str();
    app->add_option("--tol", c.tol, "Convergence tolerance")->capture_default_str();
    app->add_option("--sample-stride", c.sample_stride, "Record every k steps")->capture_default_str();
    app->add_option("--seed", c.seed, "Noise seed")->capture_default_str();
    app->add_option("--noise-kind", noise_kind, "none, uniform or gauss")->capture_default_str();
    app->add_option("--noise-bound", c.noise_bound, "Disturbance bound")->capture_default_str();
    app->add_option("--noise-sigma", c.noise_sigma, "Gaussian sigma")->capture_default_str();
    app->add_option("--threshold", c.threshold, "Matching extraction threshold")
        ->capture_default_str();
    app->add_option("--max-norm", c.max_norm, "Divergence bound")->capture_default_str();
    app->add_option("--prediction-dwell", c.prediction_dwell, "Steps to hold a partner prediction")
        ->capture_default_str();
    app->add_flag("--no-early-stop", no_early_stop, "Always integrate to the horizon");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamics for network bargaining"};
    app.require_subcommand(1);

    std::string noise_kind = "none";
    bool no_early_stop = false;
    RunConfig config;

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run stable, balanced or nash dynamics");
    sim_cmd->add_option("mode", sim.mode, "stable, balanced or nash")
        ->required()
        ->check(CLI::IsMember({"stable", "balanced", "nash"}));
    sim_cmd->add_option("--graph", sim.graph, "Graph file")->required();
    sim_cmd->add_option("--matching", sim.matching, "Matching file (balanced mode)");
    sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();
    sim_cmd->add_flag("--emit-plot-data", sim.emit_plot_data, "Write per-quantity CSVs");
    add_config_flags(sim_cmd, config, noise_kind, no_early_stop);

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "Check an outcome against the equilibrium predicates");
    ver_cmd->add_option("--graph", ver.graph, "Graph file")->required();
    ver_cmd->add_option("--outcome", ver.outcome, "Outcome file")->required();
    ver_cmd->add_option("--claim", ver.claim, "valid, stable, balanced or nash")
        ->required()
        ->check(CLI::IsMember({"valid", "stable", "balanced", "nash"}));
    ver_cmd->add_option("--tol", ver.tol, "Predicate tolerance")->capture_default_str();

    ScenarioGenArgs gen;
    auto* gen_cmd = app.add_subcommand("scenario-gen", "Build the graph of a wireless scenario");
    gen_cmd->add_option("--scenario", gen.scenario, "Scenario file")->required();
    gen_cmd->add_option("--out", gen.out, "Graph file (default stdout)");

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "Throughput improvement table for a scenario");
    rep_cmd->add_option("--scenario", rep.scenario, "Scenario file")->required();
    rep_cmd->add_option("--outcome", rep.outcome, "Outcome file (default: run nash dynamics)");
    rep_cmd->add_option("--csv", rep.csv, "Also write the table as CSV");
    add_config_flags(rep_cmd, config, noise_kind, no_early_stop);

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "Run nash dynamics on every .grf file of a directory");
    sw_cmd->add_option("--dir", sw.dir, "Directory of graph files")->required();
    sw_cmd->add_option("--out", sw.out, "Aggregate CSV")->capture_default_str();
    sw_cmd->add_option("--runs-dir", sw.runs_dir, "Per-graph trajectories and summaries");
    sw_cmd->add_option("--threads", sw.threads, "Worker threads (0: all cores)")->capture_default_str();
    add_config_flags(sw_cmd, config, noise_kind, no_early_stop);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        config.noise_kind = parse_noise_kind(noise_kind);
        config.early_stop = !no_early_stop;
        if (*sim_cmd) {
            sim.config = config;
            return simulate(sim);
        }
        if (*ver_cmd) {
            return verify(ver);
        }
        if (*gen_cmd) {
            return scenario_gen(gen);
        }
        if (*rep_cmd) {
            rep.config = config;
            return report(rep);
        }
        sw.config = config;
        return sweep(sw);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}
