#include "convlab/jellyfish.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "convlab/errors.hpp"
#include "convlab/fluid.hpp"
#include "convlab/study_io.hpp"
#include "convlab/vtk.hpp"

namespace convlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("SimConfig: " + what);
}

double parse_config_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
    return parsed;
}

int parse_config_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad integer '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
    if (parsed < -1000000000LL || parsed > 1000000000LL)
        throw std::invalid_argument("config key '" + key + "': value out of range");
    return static_cast<int>(parsed);
}

}  // namespace

double SimConfig::mu() const { return rho * f * char_length * char_length / Re; }

double SimConfig::cycle_period() const { return 1.0 / f; }

void SimConfig::validate() const {
    require(N >= 8, "N must be at least 8");
    require(std::isfinite(L) && L > 0.0, "L must be positive");
    require(std::isfinite(Re) && Re > 0.0, "Re must be positive");
    require(std::isfinite(f) && f > 0.0, "f must be positive");
    require(std::isfinite(char_length) && char_length > 0.0, "char_length must be positive");
    require(std::isfinite(rho) && rho > 0.0, "rho must be positive");
    require(std::isfinite(dt) && dt >= 0.0, "dt must be zero (automatic) or positive");
    require(std::isfinite(n_cycles) && n_cycles > 0.0 && n_cycles <= 1.0e6,
            "n_cycles must be positive");
    require(output_every >= 0, "output_every must be zero (automatic) or positive");
    require(std::isfinite(k_spring_scale) && k_spring_scale >= 0.0,
            "k_spring_scale must be nonnegative");
    require(std::isfinite(k_beam_scale) && k_beam_scale >= 0.0, "k_beam_scale must be nonnegative");
    require(std::isfinite(k_target) && k_target >= 0.0, "k_target must be nonnegative");
    require(std::isfinite(k_muscle) && k_muscle >= 0.0, "k_muscle must be nonnegative");
    require(std::isfinite(contraction_fraction) && contraction_fraction > 0.0 &&
                contraction_fraction <= 1.0,
            "contraction_fraction must lie in (0, 1]");
    require(std::isfinite(bell_a) && bell_a > 0.0, "bell_a must be positive");
    require(std::isfinite(bell_b) && bell_b > 0.0, "bell_b must be positive");
    require(2.0 * bell_a < 0.5 * L, "bell width must stay below half the domain");
    require(0.375 * L + bell_b < 0.9375 * L, "bell must stay below the wall row");
    require(std::isfinite(ds_factor) && ds_factor > 0.0 && ds_factor <= 2.0,
            "ds_factor must lie in (0, 2]");
}

RunPlan resolve_plan(const SimConfig& cfg) {
    cfg.validate();
    const double T = cfg.cycle_period();
    const double h = cfg.L / cfg.N;
    RunPlan plan;
    if (cfg.dt > 0.0) {
        if (T / cfg.dt < 1000.0 * (1.0 - 1e-9))
            throw std::invalid_argument("SimConfig: dt must give at least 1000 steps per cycle");
        plan.dt = cfg.dt;
        const double spc_real = T / cfg.dt;
        long long spc = std::llround(spc_real);
        if (std::fabs(static_cast<double>(spc) * cfg.dt - T) <= 1e-9 * T) {
            plan.steps_per_cycle = spc;
            plan.total_steps = std::llround(cfg.n_cycles * static_cast<double>(spc));
        } else {
            plan.steps_per_cycle = static_cast<long long>(std::floor(spc_real));
            plan.total_steps = std::llround(cfg.n_cycles * T / cfg.dt);
        }
    } else {
        const double desired = std::min(0.1 * h / (cfg.f * cfg.char_length), T / 1250.0);
        long long spc = std::llround(T / desired);
        if (spc < 1) spc = 1;
        if (T / static_cast<double>(spc) > desired * (1.0 + 1e-12)) ++spc;
        plan.dt = T / static_cast<double>(spc);
        plan.steps_per_cycle = spc;
        plan.total_steps = std::llround(cfg.n_cycles * static_cast<double>(spc));
    }
    if (plan.total_steps < 1)
        throw std::invalid_argument("SimConfig: run is shorter than one time step");
    if (plan.total_steps > 50000000LL)
        throw std::invalid_argument("SimConfig: run exceeds 5e7 time steps");
    plan.output_every = cfg.output_every > 0
                            ? cfg.output_every
                            : static_cast<int>(std::max<long long>(1, plan.steps_per_cycle / 50));
    return plan;
}

SimConfig load_config(const std::filesystem::path& path) {
    const auto entries = read_key_value_file(path);
    SimConfig cfg;
    for (const auto& [key, value] : entries) {
        if (key == "N") cfg.N = parse_config_int(key, value);
        else if (key == "L") cfg.L = parse_config_double(key, value);
        else if (key == "Re") cfg.Re = parse_config_double(key, value);
        else if (key == "f") cfg.f = parse_config_double(key, value);
        else if (key == "char_length") cfg.char_length = parse_config_double(key, value);
        else if (key == "rho") cfg.rho = parse_config_double(key, value);
        else if (key == "dt") cfg.dt = parse_config_double(key, value);
        else if (key == "n_cycles") cfg.n_cycles = parse_config_double(key, value);
        else if (key == "output_every") cfg.output_every = parse_config_int(key, value);
        else if (key == "k_spring_scale") cfg.k_spring_scale = parse_config_double(key, value);
        else if (key == "k_beam_scale") cfg.k_beam_scale = parse_config_double(key, value);
        else if (key == "k_target") cfg.k_target = parse_config_double(key, value);
        else if (key == "k_muscle") cfg.k_muscle = parse_config_double(key, value);
        else if (key == "contraction_fraction")
            cfg.contraction_fraction = parse_config_double(key, value);
        else if (key == "bell_a") cfg.bell_a = parse_config_double(key, value);
        else if (key == "bell_b") cfg.bell_b = parse_config_double(key, value);
        else if (key == "ds_factor") cfg.ds_factor = parse_config_double(key, value);
        else if (key == "output_dir") cfg.output_dir = value;
        else throw std::invalid_argument("unknown config key '" + key + "' in " + path.string());
    }
    cfg.validate();
    return cfg;
}

double reynolds(double rho, double frequency, double char_length, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("reynolds: mu must be positive");
    return rho * char_length * (frequency * char_length) / mu;
}

double reynolds(const SimConfig& cfg) {
    return reynolds(cfg.rho, cfg.f, cfg.char_length, cfg.mu());
}

double activation(double t, double frequency) {
    return 0.5 * (1.0 - std::cos(2.0 * kPi * frequency * t));
}

double muscle_rest_length(double t, const SimConfig& cfg) {
    if (t < 0.0) throw std::invalid_argument("muscle_rest_length: t must be nonnegative");
    const double r_max = 2.0 * cfg.bell_a;
    return r_max * (1.0 - (1.0 - cfg.contraction_fraction) * activation(t, cfg.f));
}

BellMesh build_bell(const SimConfig& cfg) {
    cfg.validate();
    const double a = cfg.bell_a;
    const double b = cfg.bell_b;
    const double h = cfg.L / cfg.N;
    const double cx = cfg.L / 2.0;
    const double cy = 0.375 * cfg.L;

    // Arc-length table of the upper half ellipse, theta in [0, pi].
    constexpr int table_n = 20001;
    std::vector<double> theta(table_n), arc(table_n);
    const double theta_step = kPi / (table_n - 1);
    for (int i = 0; i < table_n; ++i) theta[i] = i * theta_step;
    theta.back() = kPi;
    arc[0] = 0.0;
    auto speed = [&](double th) {
        const double sa = a * std::sin(th);
        const double cb = b * std::cos(th);
        return std::sqrt(sa * sa + cb * cb);
    };
    double prev = speed(theta[0]);
    for (int i = 1; i < table_n; ++i) {
        const double cur = speed(theta[i]);
        arc[i] = arc[i - 1] + 0.5 * (cur + prev) * (theta[i] - theta[i - 1]);
        prev = cur;
    }
    const double arclen = arc.back();

    long long n_seg = std::max<long long>(4, std::llround(arclen / (cfg.ds_factor * h)));
    if (n_seg % 2 == 1) ++n_seg;  // even segments -> a node sits exactly at the apex
    const int n_nodes = static_cast<int>(n_seg) + 1;
    const double ds = arclen / static_cast<double>(n_seg);

    // Equal arc-length parameter values by linear interpolation of the table.
    auto theta_at = [&](double s) {
        if (s <= 0.0) return 0.0;
        if (s >= arclen) return kPi;
        const auto it = std::upper_bound(arc.begin(), arc.end(), s);
        const std::size_t hi = static_cast<std::size_t>(it - arc.begin());
        const std::size_t lo = hi - 1;
        const double slope = (theta[hi] - theta[lo]) / (arc[hi] - arc[lo]);
        return slope * (s - arc[lo]) + theta[lo];
    };

    BellMesh bell;
    LagrangianMesh& mesh = bell.mesh;
    mesh.ds = ds;
    mesh.x.resize(n_nodes);
    mesh.y.resize(n_nodes);
    const double s_step = arclen / static_cast<double>(n_seg);
    for (int k = 0; k < n_nodes; ++k) {
        const double s = k == n_nodes - 1 ? arclen : k * s_step;
        const double th = theta_at(s);
        mesh.x[k] = cx + a * std::cos(th);
        mesh.y[k] = cy + b * std::sin(th);
    }
    // Exact mirror symmetry about the centerline; node 0 is the right margin.
    const int half = n_nodes / 2;
    for (int i = 0; i < half; ++i) {
        mesh.x[n_nodes - 1 - i] = 2.0 * cx - mesh.x[i];
        mesh.y[n_nodes - 1 - i] = mesh.y[i];
    }
    mesh.x[half] = cx;

    const double k_spring = cfg.k_spring_scale / ds;
    const double k_beam = cfg.k_beam_scale / (ds * ds * ds * ds);
    for (int i = 0; i + 1 < n_nodes; ++i) {
        Spring s;
        s.master = i;
        s.slave = i + 1;
        s.stiffness = k_spring;
        s.rest_length = std::hypot(mesh.x[i + 1] - mesh.x[i], mesh.y[i + 1] - mesh.y[i]);
        mesh.springs.push_back(s);
    }
    for (int i = 1; i + 1 < n_nodes; ++i) {
        Beam beam;
        beam.left = i - 1;
        beam.middle = i;
        beam.right = i + 1;
        beam.stiffness = k_beam;
        beam.cx = mesh.x[i - 1] - 2.0 * mesh.x[i] + mesh.x[i + 1];
        beam.cy = mesh.y[i - 1] - 2.0 * mesh.y[i] + mesh.y[i + 1];
        mesh.beams.push_back(beam);
    }
    const int n_muscles = static_cast<int>(std::max<long long>(1, std::llround(0.30 * half)));
    for (int i = 0; i < n_muscles; ++i) {
        Spring m;
        m.master = i;
        m.slave = n_nodes - 1 - i;
        m.stiffness = cfg.k_muscle;
        m.rest_length = std::hypot(mesh.x[m.slave] - mesh.x[m.master],
                                   mesh.y[m.slave] - mesh.y[m.master]);
        mesh.muscles.push_back(m);
    }

    // Tethered wall row near the top of the domain.
    const long long nw = std::max<long long>(4, std::llround(cfg.L / ds));
    const double wall_y = 0.9375 * cfg.L;
    for (long long i = 0; i < nw; ++i) {
        const double wx = (static_cast<double>(i) + 0.5) * cfg.L / static_cast<double>(nw);
        Target t;
        t.node = n_nodes + static_cast<int>(i);
        t.stiffness = cfg.k_target;
        t.ax = wx;
        t.ay = wall_y;
        mesh.x.push_back(wx);
        mesh.y.push_back(wall_y);
        mesh.targets.push_back(t);
    }

    bell.n_bell = n_nodes;
    bell.apex = half;
    bell.n_muscles = n_muscles;
    bell.arc_length = arclen;
    return bell;
}

BellMesh wrap_loaded_mesh(LagrangianMesh mesh) {
    if (mesh.x.empty()) throw std::invalid_argument("wrap_loaded_mesh: empty mesh");
    std::set<int> tethered;
    for (const Target& t : mesh.targets) tethered.insert(t.node);
    int apex = -1;
    for (int i = 0; i < static_cast<int>(mesh.x.size()); ++i) {
        if (tethered.count(i)) continue;
        if (apex < 0 || mesh.y[i] > mesh.y[apex]) apex = i;
    }
    if (apex < 0) {  // everything tethered: fall back to the global maximum
        apex = 0;
        for (int i = 1; i < static_cast<int>(mesh.x.size()); ++i)
            if (mesh.y[i] > mesh.y[apex]) apex = i;
    }
    BellMesh bell;
    bell.n_bell = static_cast<int>(mesh.x.size());
    bell.apex = apex;
    bell.n_muscles = static_cast<int>(mesh.muscles.size());
    bell.mesh = std::move(mesh);
    return bell;
}

double SwimRecord::displacement() const {
    if (bell_top_y.empty()) throw std::invalid_argument("SwimRecord: no samples recorded");
    return bell_top_y.back() - bell_top_y.front();
}

SwimRecord run_simulation(const SimConfig& cfg) { return run_simulation(cfg, build_bell(cfg)); }

SwimRecord run_simulation(const SimConfig& cfg, const BellMesh& bell) {
    const RunPlan plan = resolve_plan(cfg);
    LagrangianMesh mesh = bell.mesh;  // working copy; positions evolve
    const int n_nodes = static_cast<int>(mesh.x.size());
    if (bell.apex < 0 || bell.apex >= n_nodes)
        throw std::invalid_argument("run_simulation: apex index outside the mesh");
    if (!(mesh.ds > 0.0)) throw std::invalid_argument("run_simulation: mesh spacing must be positive");

    SwimRecord rec;
    rec.dt = plan.dt;
    rec.ds = mesh.ds;
    rec.output_every = plan.output_every;
    rec.steps_per_cycle = plan.steps_per_cycle;
    rec.total_steps = plan.total_steps;
    rec.cycle_period = cfg.cycle_period();
    rec.apex_index = bell.apex;

    const bool writing = !cfg.output_dir.empty();
    std::filesystem::path out_dir(cfg.output_dir);
    if (writing) std::filesystem::create_directories(out_dir);

    FluidSolver solver(cfg.N, cfg.L);
    FluidState state(cfg.N, cfg.L);
    FluidParams prm{cfg.rho, cfg.mu(), plan.dt};
    ForceField grid_force;
    grid_force.fx = Field2D(cfg.N);
    grid_force.fy = Field2D(cfg.N);
    grid_force.h = cfg.L / cfg.N;

    std::vector<double> fxn(n_nodes), fyn(n_nodes), un(n_nodes), vn(n_nodes);
    const double apex_x0 = mesh.x[bell.apex];
    const long long half_cycle = std::max<long long>(1, plan.steps_per_cycle / 2);
    int frame = 0;

    using clock = std::chrono::steady_clock;
    const auto loop_start = clock::now();
    std::chrono::duration<double> io_time{0.0};

    for (long long it = 0; it <= plan.total_steps; ++it) {
        const double t = static_cast<double>(it) * plan.dt;

        std::fill(fxn.begin(), fxn.end(), 0.0);
        std::fill(fyn.begin(), fyn.end(), 0.0);
        spring_force(mesh, fxn, fyn);
        if (!mesh.muscles.empty() && cfg.k_muscle != 0.0) {
            const double factor =
                1.0 - (1.0 - cfg.contraction_fraction) * activation(t, cfg.f);
            muscle_force(mesh, factor, fxn, fyn);
        }
        beam_force(mesh, fxn, fyn);
        target_force(mesh, fxn, fyn);

        if (it % plan.output_every == 0 || it == plan.total_steps) {
            rec.times.push_back(t);
            rec.bell_top_y.push_back(mesh.y[bell.apex]);
            double thrust = 0.0;
            if (!mesh.muscles.empty()) {
                for (const Spring& m : mesh.muscles) thrust += fyn[m.master];
                for (const Spring& m : mesh.muscles) thrust += fyn[m.slave];
                thrust /= static_cast<double>(2 * mesh.muscles.size());
            } else {
                for (int i = 0; i < n_nodes; ++i) thrust += fyn[i];
                thrust /= static_cast<double>(n_nodes);
            }
            rec.thrust_series.push_back(thrust);
            Snapshot snap;
            snap.t = t;
            snap.step = it;
            snap.u = state.u;
            snap.v = state.v;
            rec.snapshots.push_back(std::move(snap));
        }

        if (writing && it % half_cycle == 0) {
            const auto io_start = clock::now();
            char tag[16];
            std::snprintf(tag, sizeof(tag), "%04d", frame);
            const Field2D omega = vorticity(state);
            const double h = cfg.L / cfg.N;
            const auto write_one = [&](const std::string& base, const std::string& name,
                                       const Field2D& field) {
                auto p = out_dir / (base + "_" + tag + ".vtk");
                write_scalar_vtk(p, name, field, h);
                rec.written_files.push_back(p);
            };
            write_one("u", "uVel", state.u);
            write_one("v", "vVel", state.v);
            write_one("p", "P", state.p);
            write_one("omega", "Omega", omega);
            auto lag = out_dir / ("lag_" + std::string(tag) + ".vtk");
            write_points_vtk(lag, mesh.x, mesh.y);
            rec.written_files.push_back(lag);
            ++frame;
            io_time += clock::now() - io_start;
        }

        if (it == plan.total_steps) break;

        std::fill(grid_force.fx.v.begin(), grid_force.fx.v.end(), 0.0);
        std::fill(grid_force.fy.v.begin(), grid_force.fy.v.end(), 0.0);
        spread(mesh, fxn, fyn, cfg.N, cfg.L, grid_force);
        try {
            solver.step(state, &grid_force, prm);
        } catch (const NumericError& e) {
            throw NumericError("run_simulation: aborted at step " + std::to_string(it + 1) +
                               " (t = " + format_g17(t + plan.dt) + "): " + e.what());
        }
        interp(state.u, state.v, cfg.L, mesh, un, vn);
        for (int i = 0; i < n_nodes; ++i) {
            mesh.x[i] += plan.dt * un[i];
            mesh.y[i] += plan.dt * vn[i];
        }
    }

    const std::chrono::duration<double> elapsed = clock::now() - loop_start;
    rec.wall_time_seconds = elapsed.count() - io_time.count();
    rec.x_drift = std::fabs(mesh.x[bell.apex] - apex_x0);

    rec.bell_top_speed.assign(rec.times.size(), 0.0);
    for (std::size_t k = 1; k < rec.times.size(); ++k) {
        const double span = rec.times[k] - rec.times[k - 1];
        rec.bell_top_speed[k] =
            span > 0.0 ? (rec.bell_top_y[k] - rec.bell_top_y[k - 1]) / span : 0.0;
    }

    if (writing) {
        {
            CsvWriter csv(out_dir / "swim.csv", {"t", "bell_top_y", "bell_top_speed", "thrust_avg"});
            for (std::size_t k = 0; k < rec.times.size(); ++k)
                csv.row({format_g17(rec.times[k]), format_g17(rec.bell_top_y[k]),
                         format_g17(rec.bell_top_speed[k]), format_g17(rec.thrust_series[k])});
            csv.close();
            rec.written_files.push_back(out_dir / "swim.csv");
        }
        std::ofstream meta(out_dir / "meta.txt");
        if (!meta) throw IoError("run_simulation: cannot open " + (out_dir / "meta.txt").string());
        meta << "N = " << cfg.N << "\n"
             << "L = " << format_g17(cfg.L) << "\n"
             << "Re = " << format_g17(cfg.Re) << "\n"
             << "f = " << format_g17(cfg.f) << "\n"
             << "char_length = " << format_g17(cfg.char_length) << "\n"
             << "rho = " << format_g17(cfg.rho) << "\n"
             << "dt = " << format_g17(cfg.dt) << "\n"
             << "n_cycles = " << format_g17(cfg.n_cycles) << "\n"
             << "output_every = " << cfg.output_every << "\n"
             << "k_spring_scale = " << format_g17(cfg.k_spring_scale) << "\n"
             << "k_beam_scale = " << format_g17(cfg.k_beam_scale) << "\n"
             << "k_target = " << format_g17(cfg.k_target) << "\n"
             << "k_muscle = " << format_g17(cfg.k_muscle) << "\n"
             << "contraction_fraction = " << format_g17(cfg.contraction_fraction) << "\n"
             << "bell_a = " << format_g17(cfg.bell_a) << "\n"
             << "bell_b = " << format_g17(cfg.bell_b) << "\n"
             << "ds_factor = " << format_g17(cfg.ds_factor) << "\n"
             << "output_dir = " << cfg.output_dir << "\n"
             << "effective_dt = " << format_g17(plan.dt) << "\n"
             << "effective_output_every = " << plan.output_every << "\n"
             << "steps_per_cycle = " << plan.steps_per_cycle << "\n"
             << "total_steps = " << plan.total_steps << "\n"
             << "mu = " << format_g17(cfg.mu()) << "\n"
             << "ds = " << format_g17(mesh.ds) << "\n"
             << "n_nodes = " << n_nodes << "\n"
             << "n_bell = " << bell.n_bell << "\n"
             << "n_muscles = " << bell.n_muscles << "\n"
             << "apex_index = " << bell.apex << "\n"
             << "wall_time_seconds = " << format_g17(rec.wall_time_seconds) << "\n";
        meta.close();
        if (meta.fail())
            throw IoError("run_simulation: write failed for " + (out_dir / "meta.txt").string());
        rec.written_files.push_back(out_dir / "meta.txt");
    }
    return rec;
}

double swim_speed(const SwimRecord& record) {
    if (record.times.size() < 3)
        throw std::invalid_argument("swim_speed: record has too few samples");
    if (!(record.cycle_period > 0.0))
        throw std::invalid_argument("swim_speed: record lacks a cycle period");
    const double span = record.times.back() - record.times.front();
    const double window = 2.0 * record.cycle_period;
    if (span < window * (1.0 - 1e-9))
        throw std::invalid_argument("swim_speed: record spans fewer than two cycles");
    const double cutoff = record.times.back() - window - 1e-12 * record.cycle_period;
    double st = 0.0, sy = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < record.times.size(); ++k) {
        if (record.times[k] < cutoff) continue;
        st += record.times[k];
        sy += record.bell_top_y[k];
        ++count;
    }
    if (count < 2) throw std::invalid_argument("swim_speed: window holds fewer than two samples");
    const double mt = st / static_cast<double>(count);
    const double my = sy / static_cast<double>(count);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < record.times.size(); ++k) {
        if (record.times[k] < cutoff) continue;
        const double dtk = record.times[k] - mt;
        num += dtk * (record.bell_top_y[k] - my);
        den += dtk * dtk;
    }
    if (den == 0.0) throw std::invalid_argument("swim_speed: window has no time spread");
    return num / den;
}

ThrustError thrust_error(const SwimRecord& coarse, const SwimRecord& fine) {
    if (coarse.times.empty() || fine.times.empty())
        throw std::invalid_argument("thrust_error: empty record");
    if (coarse.times.size() != fine.times.size())
        throw std::invalid_argument("thrust_error: records hold different sample counts");
    const double ic = coarse.dt * coarse.output_every;
    const double iff = fine.dt * fine.output_every;
    if (std::fabs(ic - iff) > 1e-12 * std::max(ic, iff))
        throw std::invalid_argument("thrust_error: records use different sampling intervals");
    if (std::fabs(coarse.cycle_period - fine.cycle_period) > 1e-12 * coarse.cycle_period)
        throw std::invalid_argument("thrust_error: records use different cycle periods");
    const double align_tol = 0.5 * ic;
    ThrustError out;
    out.t = coarse.times;
    out.absolute.resize(coarse.times.size());
    out.relative.resize(coarse.times.size());
    for (std::size_t k = 0; k < coarse.times.size(); ++k) {
        if (std::fabs(coarse.times[k] - fine.times[k]) > align_tol)
            throw std::invalid_argument("thrust_error: sample times misaligned");
        const double total_fine = fine.thrust_series[k] * fine.ds;
        const double total_coarse = coarse.thrust_series[k] * coarse.ds;
        out.absolute[k] = std::fabs(total_fine - total_coarse);
        const double denom = std::fabs(total_fine);
        out.relative[k] = denom < 1e-300 ? std::numeric_limits<double>::quiet_NaN()
                                         : out.absolute[k] / denom;
    }
    const double T = coarse.cycle_period;
    const double cutoff = coarse.times.back() - T - 1e-12 * T;
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < coarse.times.size(); ++k) {
        if (coarse.times[k] < cutoff) continue;
        acc += coarse.thrust_series[k] * coarse.ds - fine.thrust_series[k] * fine.ds;
        ++count;
    }
    if (count == 0) throw std::invalid_argument("thrust_error: no samples in the last cycle");
    out.last_cycle_error = std::fabs(acc / static_cast<double>(count));
    return out;
}

}  // namespace convlab
