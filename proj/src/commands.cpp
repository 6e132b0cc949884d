#include "stokes_qsl/commands.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"

#include "stokes_qsl/csv.hpp"
#include "stokes_qsl/dynamics.hpp"
#include "stokes_qsl/metrics.hpp"
#include "stokes_qsl/speed_limits.hpp"
#include "stokes_qsl/svg.hpp"

namespace sqsl::cli {

namespace {

double parse_double_strict(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + text + "' as a number");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) {
        throw std::invalid_argument(what + ": trailing characters in '" + text + "'");
    }
    return v;
}

// Mode amplitudes arrive as "RE,IM" (or just "RE" for real values).
Complex parse_complex(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return {parse_double_strict(text, what), 0.0};
    }
    return {parse_double_strict(text.substr(0, comma), what),
            parse_double_strict(text.substr(comma + 1), what)};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    v.back() = hi;
    return v;
}

std::filesystem::path svg_sidecar(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".svg");
    return p;
}

std::string fd(double x) { return csv::format_double(x); }

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    for (auto& ch : s) {
        if (ch == '\n') ch = ' ';
    }
    return s;
}

}  // namespace

std::filesystem::path resolve_output_path(const std::filesystem::path& requested) {
    const char* env = std::getenv("STOKES_QSL_OUT");
    if (env == nullptr || *env == '\0') return requested;
    return std::filesystem::path(env) / requested.filename();
}

CsvArtifact cmd_evolve(const EvolveConfig& config) {
    const AmcsParams params =
        config.p.has_value() ? AmcsParams::from_p(config.n, *config.p)
                             : AmcsParams(config.n, config.alpha_plus, config.alpha_minus);
    const HamiltonianSpec spec = HamiltonianSpec::cross_kerr(config.eps);
    EvolutionConfig ecfg;
    ecfg.t_max = config.t_max;
    ecfg.n_samples = config.samples;

    const Trajectory classical = evolve_classical_ode(params, spec, ecfg);
    const FockStateN initial = build_amcs(params);
    const Trajectory quantum = evolve_quantum(initial, spec, ecfg);

    const std::filesystem::path out_path = resolve_output_path(config.out);
    csv::Writer w(out_path, {"t", "regime", "r_x", "r_y", "r_z", "speed", "fidelity_to_initial"});
    const FockStateN classical0 = build_amcs(classical.params.front());
    for (std::size_t i = 0; i < classical.size(); ++i) {
        const double f = fidelity(classical0, build_amcs(classical.params[i]));
        w.row({fd(classical.times[i]), "classical", fd(classical.stokes[i].x),
               fd(classical.stokes[i].y), fd(classical.stokes[i].z), fd(classical.speed[i]),
               fd(f)});
    }
    for (std::size_t i = 0; i < quantum.size(); ++i) {
        const double f = fidelity(quantum.states.front(), quantum.states[i]);
        w.row({fd(quantum.times[i]), "quantum", fd(quantum.stokes[i].x),
               fd(quantum.stokes[i].y), fd(quantum.stokes[i].z), fd(quantum.speed[i]), fd(f)});
    }
    w.close();

    if (config.svg) {
        svg::Series sc{"classical", "#1f77b4", {}};
        svg::Series sq{"quantum", "#d62728", {}};
        for (std::size_t i = 0; i < classical.size(); ++i) {
            sc.points.emplace_back(classical.stokes[i].x, classical.stokes[i].y);
        }
        for (std::size_t i = 0; i < quantum.size(); ++i) {
            sq.points.emplace_back(quantum.stokes[i].x, quantum.stokes[i].y);
        }
        svg::write_line_chart(svg_sidecar(out_path), "Stokes tracks, equatorial plane", "r_x",
                              "r_y", {sc, sq}, true);
    }
    return {out_path, w.rows_written()};
}

CsvArtifact cmd_distance_map(const DistanceMapConfig& config) {
    if (config.eps_steps < 2 || config.samples < 2) {
        throw std::invalid_argument("distance-map: both grid axes need at least two points");
    }
    if (!(config.eps_max >= config.eps_min)) {
        throw std::invalid_argument("distance-map: eps_max must not be below eps_min");
    }
    if (!(config.t_max >= 0.0)) {
        throw std::invalid_argument("distance-map: t_max must be non-negative");
    }
    const std::vector<double> eps_grid = linspace(config.eps_min, config.eps_max, config.eps_steps);
    const std::vector<double> t_grid = linspace(0.0, config.t_max, config.samples);
    const Eigen::MatrixXd map = distance_map(config.n, config.p, eps_grid, t_grid);

    const std::filesystem::path out_path = resolve_output_path(config.out);
    csv::Writer w(out_path, {"eps", "t", "d_hs"});
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            w.row({fd(eps_grid[i]), fd(t_grid[j]),
                   fd(map(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
        }
    }
    w.close();

    if (config.svg) {
        svg::write_heatmap(svg_sidecar(out_path), "Exact vs restricted evolution distance", "t",
                           "eps", map, 0.0, config.t_max, config.eps_min, config.eps_max,
                           std::sqrt(2.0));
    }
    return {out_path, w.rows_written()};
}

CsvArtifact cmd_qsl_scan(const QslScanConfig& config) {
    if (config.n_min < 1) {
        throw std::invalid_argument("qsl-scan: n_min must be at least 1");
    }
    if (config.n_max - config.n_min + 1 < 2) {
        throw std::invalid_argument("qsl-scan: the scan needs at least two photon numbers");
    }
    const std::filesystem::path out_path = resolve_output_path(config.out);
    csv::Writer w(out_path, {"N", "qsl", "qsl_cl_closed", "qsl_cl_numeric", "ratio"});
    svg::Series ratio_series{"quantum/restricted speed-limit ratio", "#2ca02c", {}};
    for (int n = config.n_min; n <= config.n_max; ++n) {
        const HamiltonianSpec spec = HamiltonianSpec::cross_kerr(config.eps);
        const double qsl = qsl_spectrum(spec, n);
        const double closed = qsl_classical_kerr_closed(config.eps, n);
        const double numeric = qsl_classical(spec, n).value;
        std::string ratio = "n/a";
        if (n >= 2) {
            const double q = speedup_ratio(n);
            ratio = fd(q);
            ratio_series.points.emplace_back(static_cast<double>(n), q);
        }
        w.row({std::to_string(n), fd(qsl), fd(closed), fd(numeric), ratio});
    }
    w.close();

    if (config.svg) {
        svg::write_line_chart(svg_sidecar(out_path), "Speed-limit ratio by photon number", "N",
                              "Q", {ratio_series}, false);
    }
    return {out_path, w.rows_written()};
}

std::vector<JobResult> run_sweep(const std::vector<SweepJob>& jobs, int workers) {
    if (workers < 1) {
        throw std::invalid_argument("run_sweep: workers must be at least 1");
    }
    for (const auto& job : jobs) {
        if (!job.args.empty() && job.args.front() == "sweep") {
            throw std::invalid_argument("run_sweep: nested sweep jobs are not allowed");
        }
    }

    std::vector<JobResult> results(jobs.size());
    std::atomic<std::size_t> cursor{0};
    const auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= jobs.size()) return;
            std::ostringstream job_out, job_err;
            int code = kExitValidation;
            try {
                code = run_main(jobs[i].args, job_out, job_err);
            } catch (const std::exception& e) {
                job_err << e.what();
            }
            JobResult r;
            r.id = jobs[i].id;
            r.ok = code == kExitOk;
            const std::string err_text = trimmed(job_err.str());
            r.message = err_text.empty() ? trimmed(job_out.str()) : err_text;
            results[i] = std::move(r);
        }
    };

    const std::size_t n_threads = std::min<std::size_t>(workers, jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return results;
}

namespace {

std::vector<SweepJob> load_jobs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open jobs file '" + path.string() + "'");
    }
    std::vector<SweepJob> jobs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(line);
        std::vector<std::string> args;
        std::string tok;
        while (tokens >> tok) args.push_back(tok);
        if (args.empty() || args.front().front() == '#') continue;
        if (args.front() == "sweep") {
            throw std::invalid_argument("jobs file line " + std::to_string(lineno) +
                                        ": nested sweep is not allowed");
        }
        jobs.push_back(SweepJob{lineno, std::move(args)});
    }
    return jobs;
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "stokes-qsl: exact vs polarization-restricted dynamics and speed limits in the "
        "fixed-photon-number two-mode sector"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file; command-line flags win");

    EvolveConfig ev;
    std::string ev_alpha_plus = "0.95,0";
    std::string ev_alpha_minus = "0.29,0.12";
    std::string ev_out = ev.out.string();
    CLI::App* evolve = app.add_subcommand(
        "evolve", "Evolve one initial state exactly and under the AMCS restriction; write Stokes tracks");
    evolve->add_option("--n", ev.n, "Total photon number")->capture_default_str();
    evolve->add_option("--eps", ev.eps, "Cross-Kerr coupling strength")->capture_default_str();
    evolve->add_option("--alpha-plus", ev_alpha_plus, "Initial + mode amplitude as RE,IM")
        ->capture_default_str();
    evolve->add_option("--alpha-minus", ev_alpha_minus, "Initial - mode amplitude as RE,IM")
        ->capture_default_str();
    CLI::Option* ev_p = evolve->add_option(
        "--p", ev.p, "Initial + mode weight; shorthand for real amplitudes sqrt(p), sqrt(1-p)");
    ev_p->excludes("--alpha-plus")->excludes("--alpha-minus");
    evolve->add_option("--t-max", ev.t_max, "Evolution span")->capture_default_str();
    evolve->add_option("--samples", ev.samples, "Samples per regime")->capture_default_str();
    evolve->add_option("--out", ev_out, "Output CSV path")->capture_default_str();
    evolve->add_flag("--svg", ev.svg, "Also write an SVG chart next to the CSV");

    DistanceMapConfig dm;
    std::string dm_out = dm.out.string();
    CLI::App* dmap = app.add_subcommand(
        "distance-map", "Map the distance between exact and restricted evolution over (eps, t)");
    dmap->add_option("--n", dm.n, "Total photon number")->capture_default_str();
    dmap->add_option("--p", dm.p, "Initial + mode weight")->capture_default_str();
    dmap->add_option("--eps-min", dm.eps_min, "Smallest coupling")->capture_default_str();
    dmap->add_option("--eps-max", dm.eps_max, "Largest coupling")->capture_default_str();
    dmap->add_option("--eps-steps", dm.eps_steps, "Points on the coupling axis")
        ->capture_default_str();
    dmap->add_option("--t-max", dm.t_max, "Largest evolution time")->capture_default_str();
    dmap->add_option("--samples", dm.samples, "Points on the time axis")->capture_default_str();
    dmap->add_option("--out", dm_out, "Output CSV path")->capture_default_str();
    dmap->add_flag("--svg", dm.svg, "Also write an SVG heatmap next to the CSV");

    QslScanConfig qs;
    std::string qs_out = qs.out.string();
    CLI::App* qscan = app.add_subcommand(
        "qsl-scan", "Scan speed limits and their ratio over a photon-number range");
    qscan->add_option("--n-min", qs.n_min, "Smallest photon number")->capture_default_str();
    qscan->add_option("--n-max", qs.n_max, "Largest photon number")->capture_default_str();
    qscan->add_option("--eps", qs.eps, "Cross-Kerr coupling strength")->capture_default_str();
    qscan->add_option("--out", qs_out, "Output CSV path")->capture_default_str();
    qscan->add_flag("--svg", qs.svg, "Also write an SVG chart next to the CSV");

    std::string sweep_jobs_path;
    int sweep_workers = 1;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a file of evolve/distance-map/qsl-scan command lines on a worker pool");
    sweep->add_option("--jobs", sweep_jobs_path, "Jobs file: one command line per row, # comments")
        ->required();
    sweep->add_option("--workers", sweep_workers, "Worker thread count")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::FileError& e) {
        err << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (evolve->parsed()) {
            ev.alpha_plus = parse_complex(ev_alpha_plus, "--alpha-plus");
            ev.alpha_minus = parse_complex(ev_alpha_minus, "--alpha-minus");
            ev.out = ev_out;
            const CsvArtifact a = cmd_evolve(ev);
            out << "wrote " << a.path.string() << " (" << a.n_rows << " rows)\n";
            if (ev.svg) out << "wrote " << svg_sidecar(a.path).string() << '\n';
        } else if (dmap->parsed()) {
            dm.out = dm_out;
            const CsvArtifact a = cmd_distance_map(dm);
            out << "wrote " << a.path.string() << " (" << a.n_rows << " rows)\n";
            if (dm.svg) out << "wrote " << svg_sidecar(a.path).string() << '\n';
        } else if (qscan->parsed()) {
            qs.out = qs_out;
            const CsvArtifact a = cmd_qsl_scan(qs);
            out << "wrote " << a.path.string() << " (" << a.n_rows << " rows)\n";
            if (qs.svg) out << "wrote " << svg_sidecar(a.path).string() << '\n';
        } else if (sweep->parsed()) {
            const std::vector<SweepJob> jobs = load_jobs(sweep_jobs_path);
            const std::vector<JobResult> results = run_sweep(jobs, sweep_workers);
            std::size_t failed = 0;
            for (const auto& r : results) {
                out << "job " << r.id << (r.ok ? " ok" : " FAILED");
                if (!r.message.empty()) out << ": " << r.message;
                out << '\n';
                if (!r.ok) ++failed;
            }
            if (failed > 0) {
                err << failed << " of " << results.size() << " jobs failed\n";
                return kExitPartialSweep;
            }
        }
        return kExitOk;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace sqsl::cli
