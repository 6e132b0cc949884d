// commands.hpp — command layer behind the stokes-qsl binary: typed configs
// for the evolve / distance-map / qsl-scan commands, CSV artifact reporting,
// the parallel sweep driver and the argv-level entry point.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stokes_qsl/fock_sector.hpp"

namespace sqsl::cli {

// Exit codes of the binary (and of run_main).
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitPartialSweep = 3;

struct EvolveConfig {
    int n = 10;
    double eps = 0.05;
    Complex alpha_plus{0.95, 0.0};
    Complex alpha_minus{0.29, 0.12};
    std::optional<double> p;  // overrides the explicit amplitudes when set
    double t_max = 60.0;
    int samples = 2000;
    std::filesystem::path out = "evolve.csv";
    bool svg = false;
};

struct DistanceMapConfig {
    int n = 10;
    double p = 0.9;
    double eps_min = 0.0;
    double eps_max = 0.5;
    int eps_steps = 200;
    double t_max = 100.0;
    int samples = 400;
    std::filesystem::path out = "distance_map.csv";
    bool svg = false;
};

struct QslScanConfig {
    int n_min = 2;
    int n_max = 100;
    double eps = 1.0;
    std::filesystem::path out = "qsl_scan.csv";
    bool svg = false;
};

struct CsvArtifact {
    std::filesystem::path path;
    std::size_t n_rows = 0;
};

// Side-by-side quantum and AMCS-restricted cross-Kerr evolution of one
// initial state. Columns: t, regime, r_x, r_y, r_z, speed,
// fidelity_to_initial; classical rows precede quantum rows, time ascending
// within each block.
CsvArtifact cmd_evolve(const EvolveConfig& config);

// Hilbert-Schmidt distance between the two evolutions on an (eps, t) grid.
// Columns: eps, t, d_hs; eps-major, t ascending within each eps.
CsvArtifact cmd_distance_map(const DistanceMapConfig& config);

// Speed-limit scan over a photon-number range at fixed eps. Columns: N, qsl,
// qsl_cl_closed, qsl_cl_numeric, ratio; ratio prints "n/a" where undefined.
CsvArtifact cmd_qsl_scan(const QslScanConfig& config);

struct SweepJob {
    std::size_t id = 0;                  // position in the jobs file
    std::vector<std::string> args;       // a full command line, e.g. {"evolve", "--n", "4"}
};

struct JobResult {
    std::size_t id = 0;
    bool ok = false;
    std::string message;
};

// Runs the jobs on a fixed pool of `workers` threads. Results come back in
// job order and are independent of the worker count; jobs must not spawn
// nested sweeps.
std::vector<JobResult> run_sweep(const std::vector<SweepJob>& jobs, int workers);

// Applies the STOKES_QSL_OUT environment variable: when set and non-empty it
// replaces the directory part of the requested output path.
std::filesystem::path resolve_output_path(const std::filesystem::path& requested);

// Full argv-level entry point (without the program name). Parses, dispatches
// and maps exceptions to exit codes; all user-facing text goes to the given
// streams.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqsl::cli
