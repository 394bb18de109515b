#include "convlab/euler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

// Node count and uniformity decision shared by solve and timing paths.
struct StepPlan {
    long long uniform_steps;  // steps of exactly dt
    bool short_final;         // one extra shortened step to reach t1
};

StepPlan plan_steps(const IvpProblem& p, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("euler_solve: dt must be positive");
    if (!(p.t0 < p.t1)) throw std::invalid_argument("euler_solve: requires t0 < t1");
    const double span = p.t1 - p.t0;
    if (dt > span) throw std::invalid_argument("euler_solve: dt exceeds the time span");
    if (span / dt > 1e9) throw NumericError("euler_solve: more than 1e9 steps requested");
    const long long rounded = std::llround(span / dt);
    if (rounded >= 1 && std::abs(static_cast<double>(rounded) * dt - span) <= 1e-9 * span)
        return {rounded, false};
    return {static_cast<long long>(std::floor(span / dt)), true};
}

double rhs_checked(const IvpProblem& p, double t, double y) {
    const double d = p.rhs(t, y);
    if (!std::isfinite(d)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "euler_solve: rhs not finite at t = " << t;
        throw NumericError(msg.str());
    }
    return d;
}

}  // namespace

Trajectory euler_solve(const IvpProblem& p, double dt) {
    const StepPlan plan = plan_steps(p, dt);
    const long long nodes = plan.uniform_steps + (plan.short_final ? 1 : 0) + 1;
    Trajectory traj;
    traj.dt = dt;
    traj.times.resize(nodes);
    traj.values.resize(nodes);
    traj.times[0] = p.t0;
    traj.values[0] = p.y0;
    double y = p.y0;
    for (long long k = 0; k < plan.uniform_steps; ++k) {
        const double t = p.t0 + static_cast<double>(k) * dt;
        y += dt * rhs_checked(p, t, y);
        const bool last = !plan.short_final && k + 1 == plan.uniform_steps;
        traj.times[k + 1] = last ? p.t1 : p.t0 + static_cast<double>(k + 1) * dt;
        traj.values[k + 1] = y;
    }
    if (plan.short_final) {
        const double t = p.t0 + static_cast<double>(plan.uniform_steps) * dt;
        y += (p.t1 - t) * rhs_checked(p, t, y);
        traj.times[nodes - 1] = p.t1;
        traj.values[nodes - 1] = y;
    }
    return traj;
}

double euler_error(const IvpProblem& p, double dt) {
    if (!p.exact) throw std::invalid_argument("euler_error: problem has no exact solution");
    const Trajectory traj = euler_solve(p, dt);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        worst = std::max(worst, std::abs(traj.values[k] - p.exact(traj.times[k])));
    return worst;
}

ConvergenceSeries euler_timing_study(const IvpProblem& p, const std::vector<double>& dt_list) {
    if (dt_list.empty()) throw std::invalid_argument("euler_timing_study: empty dt list");
    ConvergenceSeries series;
    series.kind = ResolutionKind::time_step;
    series.refine_grows_resolution = false;
    for (double dt : dt_list) {
        const StepPlan plan = plan_steps(p, dt);
        auto [final_y, seconds] = timed_median5([&] {
            // Stepping loop only; no per-node storage inside the timed body.
            double y = p.y0;
            for (long long k = 0; k < plan.uniform_steps; ++k) {
                const double t = p.t0 + static_cast<double>(k) * dt;
                y += dt * p.rhs(t, y);
            }
            if (plan.short_final) {
                const double t = p.t0 + static_cast<double>(plan.uniform_steps) * dt;
                y += (p.t1 - t) * p.rhs(t, y);
            }
            return y;
        });
        (void)final_y;
        series.resolution.push_back(dt);
        series.error.push_back(p.exact ? euler_error(p, dt) : 0.0);
        series.wall_time.push_back(seconds);
    }
    return series;
}

IvpProblem cosine_drive_problem() {
    IvpProblem p;
    p.rhs = [](double t, double) { return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * t); };
    p.y0 = 1.0;
    p.t0 = 0.0;
    p.t1 = 2.0;
    p.exact = [](double t) { return 1.0 + std::sin(2.0 * std::numbers::pi * t); };
    return p;
}

}  // namespace convlab
