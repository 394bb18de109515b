#include <functional>
#include <string>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "convlab/cli.hpp"
#include "convlab/convergence.hpp"
#include "convlab/euler.hpp"
#include "convlab/golden.hpp"
#include "convlab/ib.hpp"
#include "convlab/jellyfish.hpp"
#include "convlab/quadrature.hpp"
#include "convlab/roots.hpp"

namespace py = pybind11;
using namespace convlab;

namespace {

Integrand wrap_integrand(const std::function<double(double)>& f) {
    Integrand g;
    g.label = "custom";
    g.eval = f;
    return g;
}

ConvergenceSeries make_series(const std::vector<double>& resolution,
                              const std::vector<double>& error, bool refining_shrinks) {
    ConvergenceSeries s;
    s.kind = refining_shrinks ? ResolutionKind::time_step : ResolutionKind::grid_points;
    s.refine_grows_resolution = !refining_shrinks;
    s.resolution = resolution;
    s.error = error;
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Convergence laboratory: sequence, quadrature, time-stepping, "
              "root-finding, and immersed-boundary swimming studies.";

    m.attr("GOLDEN_RATIO") = kGoldenRatio;
    m.attr("MAX_FIB_INDEX") = kMaxFibIndex;

    // ---- integer sequence and ratio series ---------------------------------
    m.def("fib_sequence", [](int n) { return fib_sequence(n).values; }, py::arg("n"),
          "Fibonacci values F_0..F_n under the F_0 = F_1 = 1 convention.");
    m.def("golden_series",
          [](int n_max) {
              const RatioSeries s = golden_series(n_max);
              return py::make_tuple(s.approximations, s.errors);
          },
          py::arg("n_max"),
          "(approximations, errors) of successive Fibonacci ratios against "
          "the golden ratio.");
    m.def("terms_for_tolerance", &terms_for_tolerance, py::arg("tol"));
    m.def("geometric_bound", &geometric_bound, py::arg("m"));

    // ---- quadrature --------------------------------------------------------
    m.def("trap_composite",
          [](const std::function<double(double)>& f, double a, double b, long long n) {
              return trap_composite(wrap_integrand(f), a, b, n);
          },
          py::arg("f"), py::arg("a"), py::arg("b"), py::arg("n"),
          "Composite trapezoid rule over n uniform subintervals.");
    m.def("trap_nonperiodic",
          [](long long n) { return trap_composite(example_nonperiodic(), 0.0, 1.0, n); },
          py::arg("n"), "Built-in generic-rate example integral on [0, 1].");
    m.def("trap_periodic",
          [](long long n) { return trap_composite(example_periodic(), 0.0, 1.0, n); },
          py::arg("n"), "Built-in periodic example integral on [0, 1].");
    m.def("estimate_k",
          [](const std::function<double(double)>& f, double a, double b) {
              return estimate_k(wrap_integrand(f), a, b);
          },
          py::arg("f"), py::arg("a"), py::arg("b"),
          "Estimated max |f''| over [a, b] by finite differences.");
    m.def("trap_error_bound", &trap_error_bound, py::arg("k_max"), py::arg("a"), py::arg("b"),
          py::arg("n"));

    // ---- forward Euler -----------------------------------------------------
    m.def("euler_solve",
          [](const std::function<double(double, double)>& rhs, double y0, double t0, double t1,
             double dt) {
              IvpProblem p;
              p.rhs = rhs;
              p.y0 = y0;
              p.t0 = t0;
              p.t1 = t1;
              const Trajectory traj = euler_solve(p, dt);
              return py::make_tuple(traj.times, traj.values);
          },
          py::arg("rhs"), py::arg("y0"), py::arg("t0"), py::arg("t1"), py::arg("dt"),
          "(times, values) of the forward Euler walk over [t0, t1].");
    m.def("euler_error_builtin", [](double dt) { return euler_error(cosine_drive_problem(), dt); },
          py::arg("dt"),
          "Max-norm error at step dt on the built-in oscillator problem.");

    // ---- root finding ------------------------------------------------------
    py::class_<RootRun>(m, "RootRun")
        .def_readonly("iterates", &RootRun::iterates)
        .def_readonly("residuals", &RootRun::residuals)
        .def_readonly("converged", &RootRun::converged)
        .def_readonly("root_estimate", &RootRun::root_estimate)
        .def_readonly("tolerance", &RootRun::tolerance);
    m.def("secant",
          [](const std::function<double(double)>& f, double x0, double x1, double tol,
             int max_iter) { return secant(f, x0, x1, tol, max_iter); },
          py::arg("f"), py::arg("x0"), py::arg("x1"), py::arg("tol") = 1e-14,
          py::arg("max_iter") = 60);
    m.def("newton",
          [](const std::function<double(double)>& f, const std::function<double(double)>& fprime,
             double x0, double tol, int max_iter) { return newton(f, fprime, x0, tol, max_iter); },
          py::arg("f"), py::arg("fprime"), py::arg("x0"), py::arg("tol") = 1e-14,
          py::arg("max_iter") = 60);
    m.def("empirical_order", &empirical_order, py::arg("run"), py::arg("true_root"),
          "Median per-triple convergence order of a root-finding run.");

    // ---- convergence measurement -------------------------------------------
    m.def("abs_rel_error",
          [](double fine, double coarse) {
              const AbsRel e = abs_rel_error(fine, coarse);
              return py::make_tuple(e.absolute, e.relative, e.relative_defined);
          },
          py::arg("fine"), py::arg("coarse"),
          "(absolute, relative, relative_defined) difference of two values.");
    m.def("restrict_field", &restrict_field, py::arg("fine"), py::arg("n_fine"), py::arg("ratio"),
          "Nodal injection of a fine square field onto the nested coarse grid.");
    m.def("field_error", &field_error, py::arg("fine"), py::arg("n_fine"), py::arg("coarse"),
          py::arg("n_coarse"), py::arg("p"), py::arg("h_coarse"),
          "L^p norm of restrict(fine) - coarse on the coarse grid.");
    py::class_<RateFit>(m, "RateFit")
        .def_readonly("slope", &RateFit::slope)
        .def_readonly("intercept", &RateFit::intercept)
        .def_readonly("window_begin", &RateFit::window_begin)
        .def_readonly("window_end", &RateFit::window_end)
        .def_readonly("max_residual", &RateFit::max_residual)
        .def_readonly("excluded_floor_points", &RateFit::excluded_floor_points);
    m.def("fit_rate",
          [](const std::vector<double>& resolution, const std::vector<double>& error,
             bool refining_shrinks, double floor) {
              return fit_rate(make_series(resolution, error, refining_shrinks), floor);
          },
          py::arg("resolution"), py::arg("error"), py::arg("refining_shrinks") = false,
          py::arg("floor") = 1e-14,
          "Log-log least-squares rate of an error series, floor points excluded.");
    m.def("time_scaling", &time_scaling, py::arg("factor"), py::arg("dimension"));

    // ---- immersed-boundary kernel ------------------------------------------
    m.def("delta_phi", &delta_phi, py::arg("r"), "Four-point regularized kernel value.");

    // ---- swimming study ----------------------------------------------------
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("N", &SimConfig::N)
        .def_readwrite("L", &SimConfig::L)
        .def_readwrite("Re", &SimConfig::Re)
        .def_readwrite("f", &SimConfig::f)
        .def_readwrite("char_length", &SimConfig::char_length)
        .def_readwrite("rho", &SimConfig::rho)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("n_cycles", &SimConfig::n_cycles)
        .def_readwrite("output_every", &SimConfig::output_every)
        .def_readwrite("k_spring_scale", &SimConfig::k_spring_scale)
        .def_readwrite("k_beam_scale", &SimConfig::k_beam_scale)
        .def_readwrite("k_target", &SimConfig::k_target)
        .def_readwrite("k_muscle", &SimConfig::k_muscle)
        .def_readwrite("contraction_fraction", &SimConfig::contraction_fraction)
        .def_readwrite("bell_a", &SimConfig::bell_a)
        .def_readwrite("bell_b", &SimConfig::bell_b)
        .def_readwrite("ds_factor", &SimConfig::ds_factor)
        .def_readwrite("output_dir", &SimConfig::output_dir)
        .def("mu", &SimConfig::mu)
        .def("cycle_period", &SimConfig::cycle_period)
        .def("validate", &SimConfig::validate);
    m.def("reynolds", py::overload_cast<const SimConfig&>(&reynolds), py::arg("config"));
    m.def("reynolds",
          py::overload_cast<double, double, double, double>(&reynolds), py::arg("rho"),
          py::arg("frequency"), py::arg("char_length"), py::arg("mu"));
    m.def("activation", &activation, py::arg("t"), py::arg("frequency"));
    m.def("muscle_rest_length", &muscle_rest_length, py::arg("t"), py::arg("config"));
    m.def("resolve_plan",
          [](const SimConfig& cfg) {
              const RunPlan plan = resolve_plan(cfg);
              py::dict d;
              d["dt"] = plan.dt;
              d["steps_per_cycle"] = plan.steps_per_cycle;
              d["total_steps"] = plan.total_steps;
              d["output_every"] = plan.output_every;
              return d;
          },
          py::arg("config"), "Resolved stepping plan as a dict.");
    m.def("bell_summary",
          [](const SimConfig& cfg) {
              const BellMesh bell = build_bell(cfg);
              py::dict d;
              d["n_bell"] = bell.n_bell;
              d["n_muscles"] = bell.n_muscles;
              d["apex"] = bell.apex;
              d["arc_length"] = bell.arc_length;
              d["ds"] = bell.mesh.ds;
              d["n_nodes"] = bell.mesh.x.size();
              d["n_springs"] = bell.mesh.springs.size();
              d["n_beams"] = bell.mesh.beams.size();
              d["n_targets"] = bell.mesh.targets.size();
              return d;
          },
          py::arg("config"), "Structural counts of the bell built from a config.");
    m.def("run_swim",
          [](const SimConfig& cfg) {
              const SwimRecord rec = run_simulation(cfg);
              py::dict d;
              d["displacement"] = rec.displacement();
              d["x_drift"] = rec.x_drift;
              d["times"] = rec.times;
              d["bell_top_y"] = rec.bell_top_y;
              d["thrust_series"] = rec.thrust_series;
              d["dt"] = rec.dt;
              d["ds"] = rec.ds;
              d["steps_per_cycle"] = rec.steps_per_cycle;
              d["total_steps"] = rec.total_steps;
              d["wall_time_seconds"] = rec.wall_time_seconds;
              return d;
          },
          py::arg("config"),
          "Run the swimming simulation and return its sampled series as a dict.");

    // ---- command-line entry point ------------------------------------------
    m.def("run_cli", [](const std::vector<std::string>& args) { return run_cli(args); },
          py::arg("args"), "Drive the command-line interface; returns its exit code.");
}
