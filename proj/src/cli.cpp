#include "convlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "convlab/convergence.hpp"
#include "convlab/errors.hpp"
#include "convlab/euler.hpp"
#include "convlab/geometry_io.hpp"
#include "convlab/golden.hpp"
#include "convlab/jellyfish.hpp"
#include "convlab/quadrature.hpp"
#include "convlab/roots.hpp"
#include "convlab/study_io.hpp"

namespace convlab {
namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Small shared helpers.

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

fs::path resolve_out_dir(const std::string& flag, const char* subcommand) {
    fs::path dir = flag.empty() ? default_out_root() / subcommand : fs::path(flag);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

// Records every regular file under root (manifest.txt itself excluded) so a
// study's manifest is complete even for files written deep inside helpers.
fs::path write_tree_manifest(const fs::path& root) {
    Manifest manifest(root);
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename() == "manifest.txt") continue;
        manifest.record(entry.path());
    }
    return manifest.write();
}

std::vector<long long> to_count_list(const std::vector<double>& values) {
    std::vector<long long> out;
    out.reserve(values.size());
    for (double v : values) {
        const long long n = std::llround(v);
        if (n < 1 || std::abs(v - static_cast<double>(n)) > 1e-9 * std::max(1.0, std::abs(v)))
            throw std::invalid_argument("list entries must be positive integers, got " + g6(v));
        if (!out.empty() && n <= out.back())
            throw std::invalid_argument("list entries must be strictly increasing");
        out.push_back(n);
    }
    if (out.empty()) throw std::invalid_argument("list is empty");
    return out;
}

std::string fit_report_line(const RateFit& fit) {
    std::ostringstream os;
    os << "slope=" << format_g17(fit.slope)
       << " intercept=" << format_g17(fit.intercept)
       << " window=[" << fit.window_begin << "," << fit.window_end << ")"
       << " residual=" << format_g17(fit.max_residual)
       << " floored=" << fit.excluded_floor_points;
    return os.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

double parse_cell(const std::string& cell, const char* what, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " value '" + cell + "' on line " +
                                    std::to_string(line_no));
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// The default resolution lists mirror the published study layouts: ten
// log-spaced subinterval counts per decade triple for the trapezoid sweep,
// and seven half-decade time steps for the Euler sweep.
std::vector<long long> default_trap_n_list() {
    return {100, 215, 464, 1000, 2154, 4642, 10000, 21544, 46416, 100000};
}

std::vector<double> default_euler_dt_list() {
    return {1e-2, std::pow(10.0, -2.5), 1e-3, std::pow(10.0, -3.5),
            1e-4, std::pow(10.0, -4.5), 1e-5};
}

// ---------------------------------------------------------------------------
// golden

void run_golden(int n_max, double tol, const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "golden");
    const RatioSeries series = golden_series(n_max);

    CsvWriter csv(dir / "golden.csv", {"n", "phi_n", "abs_error"});
    for (std::size_t i = 0; i < series.index.size(); ++i)
        csv.row({std::to_string(series.index[i]), format_g17(series.approximations[i]),
                 format_g17(series.errors[i])});
    csv.close();

    const int terms = terms_for_tolerance(tol);
    write_tree_manifest(dir);
    std::cout << "golden: n_max=" << n_max << " final_error=" << g6(series.errors.back())
              << " terms_for_tol(" << g6(tol) << ")=" << terms << " out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// trapezoid

void run_trapezoid(const std::string& example, const std::string& n_list_text,
                   long long reference_n, const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "trapezoid");
    const Integrand f = (example == "periodic") ? example_periodic() : example_nonperiodic();

    std::vector<long long> n_list = n_list_text.empty()
                                        ? default_trap_n_list()
                                        : to_count_list(parse_range_list(n_list_text));
    if (reference_n < 1000) throw std::invalid_argument("--reference-n must be at least 1000");

    const double reference = cached_reference(f, 0.0, 1.0, reference_n, dir / "cache");
    QuadStudy study;
    study.a = 0.0;
    study.b = 1.0;
    study.n_list = n_list;
    study.reference_value = reference;
    study.reference_n = reference_n;
    const ConvergenceSeries series = trap_study(study, f);

    CsvWriter csv(dir / "trapezoid.csv",
                  {"n", "approximation", "abs_error", "wall_time_seconds", "parity"});
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const double approx = trap_composite(f, 0.0, 1.0, n_list[i]);
        csv.row({std::to_string(n_list[i]), format_g17(approx), format_g17(series.error[i]),
                 format_g17(series.wall_time[i]), n_list[i] % 2 == 0 ? "even" : "odd"});
    }
    csv.close();

    std::string slope_text = "na";
    try {
        const RateFit fit = fit_rate(series);
        write_text_file(dir / "trapezoid_fit.txt", fit_report_line(fit));
        slope_text = g6(fit.slope);
    } catch (const NumericError&) {
        // Too few points above the error floor (e.g. the periodic example,
        // which converges past measurability almost immediately): the study
        // output still stands, there is just no rate to report.
    }
    write_tree_manifest(dir);
    std::cout << "trapezoid " << example << ": reference=" << format_g17(reference)
              << " slope=" << slope_text << " points=" << n_list.size()
              << " out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// euler

void run_euler(const std::string& dt_list_text, const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "euler");
    const std::vector<double> dt_list =
        dt_list_text.empty() ? default_euler_dt_list() : parse_range_list(dt_list_text);

    const IvpProblem problem = cosine_drive_problem();
    const ConvergenceSeries series = euler_timing_study(problem, dt_list);

    CsvWriter csv(dir / "euler.csv", {"dt", "abs_error", "wall_time_seconds"});
    for (std::size_t i = 0; i < series.resolution.size(); ++i)
        csv.row({format_g17(series.resolution[i]), format_g17(series.error[i]),
                 format_g17(series.wall_time[i])});
    csv.close();

    const RateFit order_fit = fit_rate(series);
    write_text_file(dir / "euler_fit.txt", fit_report_line(order_fit));

    ConvergenceSeries timing;
    timing.kind = ResolutionKind::time_step;
    timing.refine_grows_resolution = false;
    timing.resolution = series.resolution;
    timing.error = series.wall_time;  // fit wall time against step size
    const RateFit timing_fit = fit_rate(timing);
    write_text_file(dir / "euler_timing_fit.txt", fit_report_line(timing_fit));

    write_tree_manifest(dir);
    std::cout << "euler: order=" << g6(order_fit.slope)
              << " timing_slope=" << g6(timing_fit.slope) << " points=" << dt_list.size()
              << " out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// secant / newton

struct RootProblem {
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    double true_root = 0.0;
    double secant_x0 = 0.0;
    double secant_x1 = 0.0;
    double newton_x0 = 0.0;
};

RootProblem make_root_problem(const std::string& name) {
    if (name == "x2")
        return {[](double x) { return x * x - 2.0; }, [](double x) { return 2.0 * x; },
                std::sqrt(2.0), 1.0, 2.0, 2.0};
    if (name == "cosx")
        return {[](double x) { return std::cos(x) - x; },
                [](double x) { return -std::sin(x) - 1.0; },
                0.7390851332151607, 0.0, 1.0, 3.0};
    if (name == "expx")
        return {[](double x) { return std::exp(x) - 2.0; }, [](double x) { return std::exp(x); },
                std::log(2.0), 0.0, 1.0, 2.0};
    throw std::invalid_argument("unknown problem '" + name + "'");
}

void run_secant(const std::string& problem_name, bool use_newton, std::optional<double> x0_flag,
                std::optional<double> x1_flag, double tol, int max_iter,
                const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "secant");
    const RootProblem prob = make_root_problem(problem_name);

    RootRun run;
    if (use_newton) {
        const double x0 = x0_flag.value_or(prob.newton_x0);
        run = newton(prob.f, prob.fprime, x0, tol, max_iter);
    } else {
        const double x0 = x0_flag.value_or(prob.secant_x0);
        const double x1 = x1_flag.value_or(prob.secant_x1);
        run = secant(prob.f, x0, x1, tol, max_iter);
    }
    if (!run.converged)
        throw NumericError(std::string(use_newton ? "newton" : "secant") + " on '" + problem_name +
                           "' did not reach |f| <= " + g6(tol) + " within " +
                           std::to_string(max_iter) + " iterations");

    CsvWriter csv(dir / "roots.csv", {"iter", "x", "abs_residual", "abs_error"});
    for (std::size_t i = 0; i < run.iterates.size(); ++i)
        csv.row({std::to_string(i), format_g17(run.iterates[i]), format_g17(run.residuals[i]),
                 format_g17(std::abs(run.iterates[i] - prob.true_root))});
    csv.close();

    std::string order_text = "na";
    try {
        order_text = g6(empirical_order(run, prob.true_root));
    } catch (const NumericError&) {
        // Not enough usable iterates for an order estimate (possible with
        // user-supplied starting points); the run itself still converged.
    }
    write_tree_manifest(dir);
    std::cout << (use_newton ? "newton " : "secant ") << problem_name
              << ": root=" << format_g17(run.root_estimate)
              << " iters=" << run.iterates.size() - 1 << " order=" << order_text
              << " out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// jelly

struct JellyOverrides {
    std::optional<int> n;
    std::optional<double> l, re, freq, char_length, rho, dt, cycles;
    std::optional<int> output_every;
    std::optional<double> k_spring, k_beam, k_target, k_muscle;
    std::optional<double> contraction, bell_a, bell_b, ds_factor;
    bool no_actuation = false;

    void apply(SimConfig& cfg) const {
        if (n) cfg.N = *n;
        if (l) cfg.L = *l;
        if (re) cfg.Re = *re;
        if (freq) cfg.f = *freq;
        if (char_length) cfg.char_length = *char_length;
        if (rho) cfg.rho = *rho;
        if (dt) cfg.dt = *dt;
        if (cycles) cfg.n_cycles = *cycles;
        if (output_every) cfg.output_every = *output_every;
        if (k_spring) cfg.k_spring_scale = *k_spring;
        if (k_beam) cfg.k_beam_scale = *k_beam;
        if (k_target) cfg.k_target = *k_target;
        if (k_muscle) cfg.k_muscle = *k_muscle;
        if (contraction) cfg.contraction_fraction = *contraction;
        if (bell_a) cfg.bell_a = *bell_a;
        if (bell_b) cfg.bell_b = *bell_b;
        if (ds_factor) cfg.ds_factor = *ds_factor;
        if (no_actuation) cfg.k_muscle = 0.0;
    }
};

SimConfig base_config(const std::string& config_path) {
    if (config_path.empty()) return SimConfig{};
    return load_config(config_path);
}

std::string speed_text(const SwimRecord& rec) {
    try {
        return g6(swim_speed(rec));
    } catch (const std::invalid_argument&) {
        return "na";  // fewer than two cycles recorded
    }
}

void run_jelly(const std::string& config_path, const JellyOverrides& over,
               const std::string& geometry_prefix, double geometry_ds,
               const std::string& out_flag) {
    SimConfig cfg = base_config(config_path);
    over.apply(cfg);

    fs::path dir;
    if (!out_flag.empty())
        dir = resolve_out_dir(out_flag, "jelly");
    else if (!cfg.output_dir.empty())
        dir = resolve_out_dir(cfg.output_dir, "jelly");
    else
        dir = resolve_out_dir("", "jelly");
    cfg.output_dir = dir.string();
    cfg.validate();

    BellMesh bell;
    if (geometry_prefix.empty()) {
        bell = build_bell(cfg);
        // Persist the generated shape in the standard plain-text formats so
        // the run is reproducible from files alone.
        write_vertex_file(dir / "bell.vertex", bell.mesh);
        write_spring_file(dir / "bell.spring", bell.mesh);
        write_beam_file(dir / "bell.beam", bell.mesh);
        write_target_file(dir / "bell.target", bell.mesh);
    } else {
        LagrangianMesh mesh = read_vertex_file(geometry_prefix + ".vertex");
        if (fs::exists(geometry_prefix + ".spring"))
            read_spring_file(geometry_prefix + ".spring", mesh);
        if (fs::exists(geometry_prefix + ".beam"))
            read_beam_file(geometry_prefix + ".beam", mesh);
        if (fs::exists(geometry_prefix + ".target"))
            read_target_file(geometry_prefix + ".target", mesh);
        if (geometry_ds > 0.0) {
            mesh.ds = geometry_ds;
        } else if (!mesh.springs.empty()) {
            double sum = 0.0;
            for (const Spring& s : mesh.springs) sum += s.rest_length;
            mesh.ds = sum / static_cast<double>(mesh.springs.size());
        } else {
            throw std::invalid_argument(
                "--ds is required when the geometry has no spring file to infer spacing from");
        }
        bell = wrap_loaded_mesh(std::move(mesh));
    }

    const SwimRecord rec = run_simulation(cfg, bell);
    write_tree_manifest(dir);
    std::cout << "jelly: N=" << cfg.N << " nodes=" << bell.mesh.x.size()
              << " muscles=" << bell.n_muscles << " displacement=" << g6(rec.displacement())
              << " speed=" << speed_text(rec) << " x_drift=" << g6(rec.x_drift)
              << " wall=" << g6(rec.wall_time_seconds) << "s out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// jelly-sweep

void run_jelly_sweep(const std::string& config_path, const JellyOverrides& over,
                     const std::string& n_list_text, int jobs, bool timed_serial,
                     const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "jelly-sweep");
    std::vector<long long> n_list = n_list_text.empty()
                                        ? std::vector<long long>{32, 48, 64, 96, 128}
                                        : to_count_list(parse_range_list(n_list_text));

    std::vector<SimConfig> members;
    members.reserve(n_list.size());
    for (long long n : n_list) {
        SimConfig cfg = base_config(config_path);
        over.apply(cfg);
        cfg.N = static_cast<int>(n);
        cfg.output_dir = (dir / ("N" + std::to_string(n))).string();
        cfg.validate();
        members.push_back(std::move(cfg));
    }

    std::vector<std::optional<SwimRecord>> records(members.size());
    std::vector<std::exception_ptr> failures(members.size());
    std::size_t workers = timed_serial ? 1 : static_cast<std::size_t>(jobs);
    workers = std::min(workers, members.size());

    auto run_member = [&](std::size_t i) {
        try {
            records[i] = run_simulation(members[i]);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < members.size(); ++i) run_member(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= records.size()) return;
                    run_member(i);
                }
            });
        for (std::thread& t : pool) t.join();
    }
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    // Assemble the cross-resolution table in ascending N order, regardless of
    // how the runs were scheduled; the finest grid is the comparison target.
    const SwimRecord& fine = *records.back();
    const double fine_speed = [&]() {
        try {
            return swim_speed(fine);
        } catch (const std::invalid_argument&) {
            return std::nan("");
        }
    }();

    CsvWriter csv(dir / "sweep.csv",
                  {"n", "ds", "dt", "displacement", "swim_speed", "speed_error_vs_fine",
                   "thrust_error_vs_fine", "x_drift", "wall_time_seconds"});
    std::ostringstream disp_list;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SwimRecord& rec = *records[i];
        double speed = std::nan("");
        try {
            speed = swim_speed(rec);
        } catch (const std::invalid_argument&) {
        }
        const double speed_err = std::abs(speed - fine_speed);
        double thrust_err = std::nan("");
        try {
            thrust_err = thrust_error(rec, fine).last_cycle_error;
        } catch (const std::invalid_argument&) {
            // Mixed sampling cadences cannot be compared pointwise.
        }
        csv.row({std::to_string(n_list[i]), format_g17(rec.ds), format_g17(rec.dt),
                 format_g17(rec.displacement()), format_g17(speed), format_g17(speed_err),
                 format_g17(thrust_err), format_g17(rec.x_drift),
                 format_g17(rec.wall_time_seconds)});
        if (i) disp_list << ",";
        disp_list << g6(rec.displacement());
    }
    csv.close();
    write_tree_manifest(dir);
    std::cout << "jelly-sweep: n_grids=" << n_list.size() << " fine_N=" << n_list.back()
              << " displacements=[" << disp_list.str() << "] jobs=" << workers
              << " out=" << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// report

int find_column(const std::vector<std::string>& header,
                std::initializer_list<const char*> names, int fallback) {
    for (const char* name : names)
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
    return fallback;
}

void run_report(const std::string& csv_flag, const std::string& kind_flag, double floor,
                const std::string& out_flag) {
    const fs::path dir = resolve_out_dir(out_flag, "report");
    std::ifstream in(csv_flag);
    if (!in) throw IoError("cannot open '" + csv_flag + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("'" + csv_flag + "' is empty");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2)
        throw std::invalid_argument("'" + csv_flag + "' needs at least two columns");
    const int res_col = find_column(header, {"n", "dt", "resolution", "terms"}, 0);
    const int err_col = find_column(header, {"abs_error", "error"}, 1);

    ConvergenceSeries series;
    std::string kind = kind_flag;
    if (kind == "auto") kind = header[static_cast<std::size_t>(res_col)] == "dt" ? "dt" : "grid";
    if (kind == "dt") {
        series.kind = ResolutionKind::time_step;
        series.refine_grows_resolution = false;
    } else if (kind == "terms") {
        series.kind = ResolutionKind::term_count;
        series.refine_grows_resolution = true;
    } else {
        series.kind = ResolutionKind::grid_points;
        series.refine_grows_resolution = true;
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        const std::size_t need = static_cast<std::size_t>(std::max(res_col, err_col)) + 1;
        if (cells.size() < need)
            throw std::invalid_argument("line " + std::to_string(line_no) + " of '" + csv_flag +
                                        "' has too few columns");
        series.resolution.push_back(
            parse_cell(cells[static_cast<std::size_t>(res_col)], "resolution", line_no));
        series.error.push_back(
            parse_cell(cells[static_cast<std::size_t>(err_col)], "error", line_no));
    }

    const RateFit fit = fit_rate(series, floor);
    const std::string report = fit_report_line(fit);
    write_text_file(dir / "fit.txt", report);
    write_tree_manifest(dir);
    std::cout << "report: " << report << " csv=" << csv_flag << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"convergence laboratory: discretization studies and an immersed-boundary swimmer"};
    app.name("convlab");
    app.require_subcommand(1);

    // golden
    auto* golden_cmd = app.add_subcommand("golden", "Fibonacci ratio convergence study");
    int golden_n_max = 40;
    double golden_tol = 1e-15;
    std::string golden_out;
    golden_cmd->add_option("--n-max", golden_n_max, "largest ratio index")
        ->check(CLI::Range(1, kMaxFibIndex - 1));
    golden_cmd->add_option("--tol", golden_tol, "agreement tolerance for the term count")
        ->check(CLI::PositiveNumber);
    golden_cmd->add_option("--out", golden_out, "output directory");
    golden_cmd->callback([&] { run_golden(golden_n_max, golden_tol, golden_out); });

    // trapezoid
    auto* trap_cmd = app.add_subcommand("trapezoid", "composite trapezoid convergence study");
    std::string trap_example = "nonperiodic";
    std::string trap_n_list;
    long long trap_reference_n = 10'000'000;
    std::string trap_out;
    trap_cmd->add_option("--example", trap_example, "integrand: nonperiodic or periodic")
        ->check(CLI::IsMember({"nonperiodic", "periodic"}));
    trap_cmd->add_option("--n-list", trap_n_list,
                         "subinterval counts: comma list or start:step:stop");
    trap_cmd->add_option("--reference-n", trap_reference_n, "reference evaluation count");
    trap_cmd->add_option("--out", trap_out, "output directory");
    trap_cmd->callback(
        [&] { run_trapezoid(trap_example, trap_n_list, trap_reference_n, trap_out); });

    // euler
    auto* euler_cmd = app.add_subcommand("euler", "forward Euler accuracy and timing study");
    std::string euler_dt_list;
    std::string euler_out;
    euler_cmd->add_option("--dt-list", euler_dt_list, "time steps: comma list or start:step:stop");
    euler_cmd->add_option("--out", euler_out, "output directory");
    euler_cmd->callback([&] { run_euler(euler_dt_list, euler_out); });

    // secant
    auto* secant_cmd = app.add_subcommand("secant", "root finding with empirical order");
    std::string secant_problem = "x2";
    bool secant_newton = false;
    double secant_x0 = 0.0, secant_x1 = 0.0, secant_tol = 1e-14;
    int secant_max_iter = 60;
    std::string secant_out;
    secant_cmd->add_option("--problem", secant_problem, "x2 (x^2-2), cosx (cos x - x), expx (e^x-2)")
        ->check(CLI::IsMember({"x2", "cosx", "expx"}));
    secant_cmd->add_flag("--newton", secant_newton, "use Newton's method instead of the secant");
    auto* secant_x0_opt = secant_cmd->add_option("--x0", secant_x0, "first starting point");
    auto* secant_x1_opt =
        secant_cmd->add_option("--x1", secant_x1, "second starting point (secant only)");
    secant_cmd->add_option("--tol", secant_tol, "residual stopping tolerance")
        ->check(CLI::PositiveNumber);
    secant_cmd->add_option("--max-iter", secant_max_iter, "iteration cap")->check(CLI::Range(1, 10000));
    secant_cmd->add_option("--out", secant_out, "output directory");
    secant_cmd->callback([&] {
        run_secant(secant_problem, secant_newton,
                   secant_x0_opt->count() ? std::optional<double>(secant_x0) : std::nullopt,
                   secant_x1_opt->count() ? std::optional<double>(secant_x1) : std::nullopt,
                   secant_tol, secant_max_iter, secant_out);
    });

    // shared jelly flag block
    auto add_jelly_overrides = [](CLI::App* cmd, JellyOverrides& over, bool with_n) {
        auto opt = [&](const char* name, auto& slot, const char* help) {
            using T = typename std::decay_t<decltype(slot)>::value_type;
            auto* o = cmd->add_option_function<T>(
                name, [&slot](const T& v) { slot = v; }, help);
            return o;
        };
        if (with_n) opt("--n", over.n, "grid points per side");
        opt("--l", over.l, "domain side length");
        opt("--re", over.re, "Reynolds number");
        opt("--freq", over.freq, "contraction frequency");
        opt("--char-length", over.char_length, "bell width scale");
        opt("--rho", over.rho, "fluid density");
        opt("--dt", over.dt, "time step (0 = automatic)");
        opt("--cycles", over.cycles, "contraction cycles to run");
        opt("--output-every", over.output_every, "steps between samples (0 = automatic)");
        opt("--k-spring", over.k_spring, "arc spring stiffness scale");
        opt("--k-beam", over.k_beam, "beam stiffness scale");
        opt("--k-target", over.k_target, "wall tether stiffness");
        opt("--k-muscle", over.k_muscle, "muscle stiffness");
        opt("--contraction", over.contraction, "rest-length fraction at peak activation");
        opt("--bell-a", over.bell_a, "bell horizontal semi-axis");
        opt("--bell-b", over.bell_b, "bell vertical semi-axis");
        opt("--ds-factor", over.ds_factor, "node spacing as a fraction of h");
        cmd->add_flag("--no-actuation", over.no_actuation, "zero the muscle stiffness");
    };

    // jelly
    auto* jelly_cmd = app.add_subcommand("jelly", "immersed-boundary swimmer run");
    std::string jelly_config, jelly_geometry, jelly_out;
    double jelly_geometry_ds = 0.0;
    JellyOverrides jelly_over;
    jelly_cmd->add_option("--config", jelly_config, "key = value configuration file")
        ->check(CLI::ExistingFile);
    add_jelly_overrides(jelly_cmd, jelly_over, true);
    jelly_cmd->add_option("--geometry", jelly_geometry,
                          "geometry file prefix (reads PREFIX.vertex/.spring/.beam/.target)");
    jelly_cmd->add_option("--ds", jelly_geometry_ds, "node spacing for loaded geometry")
        ->check(CLI::PositiveNumber);
    jelly_cmd->add_option("--out", jelly_out, "output directory");
    jelly_cmd->callback(
        [&] { run_jelly(jelly_config, jelly_over, jelly_geometry, jelly_geometry_ds, jelly_out); });

    // jelly-sweep
    auto* sweep_cmd = app.add_subcommand("jelly-sweep", "swimmer grid-refinement sweep");
    std::string sweep_config, sweep_n_list, sweep_out;
    int sweep_jobs = 1;
    bool sweep_timed = false;
    JellyOverrides sweep_over;
    sweep_cmd->add_option("--config", sweep_config, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--n-list", sweep_n_list, "grid sizes: comma list or start:step:stop");
    add_jelly_overrides(sweep_cmd, sweep_over, false);
    sweep_cmd->add_option("--jobs", sweep_jobs, "concurrent runs")->check(CLI::Range(1, 256));
    sweep_cmd->add_flag("--timed", sweep_timed,
                        "force serial execution so wall times are comparable");
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->callback([&] {
        run_jelly_sweep(sweep_config, sweep_over, sweep_n_list, sweep_jobs, sweep_timed, sweep_out);
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "fit a convergence rate from a study CSV");
    std::string report_csv, report_kind = "auto", report_out;
    double report_floor = 1e-14;
    report_cmd->add_option("--csv", report_csv, "study CSV with resolution and error columns")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("--kind", report_kind, "resolution kind")
        ->check(CLI::IsMember({"auto", "grid", "dt", "terms"}));
    report_cmd->add_option("--floor", report_floor, "error floor excluded from the fit")
        ->check(CLI::PositiveNumber);
    report_cmd->add_option("--out", report_out, "output directory");
    report_cmd->callback([&] { run_report(report_csv, report_kind, report_floor, report_out); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("convlab");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace convlab
