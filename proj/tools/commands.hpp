#pragma once

#include "dyadic/config.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace dyadic::cli {

namespace fs = std::filesystem;

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // bad flags, unreadable or malformed input
inline constexpr int kExitUndecided = 2;   // undecided/unsettled run, refuted claim, failed sweep entry
inline constexpr int kExitDiverged = 3;

struct SimulateArgs {
    std::string mode;  // stable | balanced | nash
    fs::path graph;
    std::optional<fs::path> matching;
    fs::path out = "run";
    bool emit_plot_data = false;
    RunConfig config;
};

struct VerifyArgs {
    fs::path graph;
    fs::path outcome;
    std::string claim;  // valid | stable | balanced | nash
    double tol = 1e-6;
};

struct ScenarioGenArgs {
    fs::path scenario;
    std::optional<fs::path> out;
};

struct ReportArgs {
    fs::path scenario;
    std::optional<fs::path> outcome;
    std::optional<fs::path> csv;
    RunConfig config;
};

struct SweepArgs {
    fs::path dir;
    fs::path out = "sweep.csv";
    std::optional<fs::path> runs_dir;
    unsigned threads = 0;  // 0: hardware concurrency
    RunConfig config;
};

int simulate(const SimulateArgs& args);
int verify(const VerifyArgs& args);
int scenario_gen(const ScenarioGenArgs& args);
int report(const ReportArgs& args);
int sweep(const SweepArgs& args);

}  // namespace dyadic::cli
