#include "convlab/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

double eval_checked(const Integrand& f, double x) {
    const double y = f.eval(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "trap_composite: integrand not finite at x = " << x;
        throw NumericError(msg.str());
    }
    return y;
}

}  // namespace

double trap_composite(const Integrand& f, double a, double b, long long n) {
    if (n < 1) throw std::invalid_argument("trap_composite: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("trap_composite: requires a < b");
    const double width = (b - a) / static_cast<double>(n);
    double sum = 0.5 * (eval_checked(f, a) + eval_checked(f, b));
    double comp = 0.0;
    for (long long j = 1; j < n; ++j) {
        const double x = a + static_cast<double>(j) * width;
        const double term = eval_checked(f, x) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum * width;
}

double trap_error_bound(double k_max, double a, double b, long long n) {
    if (k_max < 0.0) throw std::invalid_argument("trap_error_bound: k_max must be >= 0");
    if (n < 1) throw std::invalid_argument("trap_error_bound: n must be >= 1");
    const double span = b - a;
    const double nn = static_cast<double>(n);
    return k_max * span * span * span / (12.0 * nn * nn);
}

double estimate_k(const Integrand& f, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("estimate_k: requires a < b");
    const int samples = 100'001;
    const double step = 1e-5 * (b - a);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / (samples - 1);
        double d2;
        if (f.second_derivative) {
            d2 = f.second_derivative(x);
        } else {
            d2 = (f.eval(x + step) - 2.0 * f.eval(x) + f.eval(x - step)) / (step * step);
        }
        if (!std::isfinite(d2)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "estimate_k: second derivative not finite at x = " << x;
            throw NumericError(msg.str());
        }
        worst = std::max(worst, std::abs(d2));
    }
    return worst;
}

ConvergenceSeries trap_study(const QuadStudy& study, const Integrand& f) {
    for (long long n : study.n_list)
        if (n < 1 || n >= study.reference_n)
            throw std::invalid_argument("trap_study: every n must satisfy 1 <= n < reference_n");
    ConvergenceSeries series;
    series.kind = ResolutionKind::grid_points;
    series.refine_grows_resolution = true;
    for (long long n : study.n_list) {
        auto [value, seconds] =
            timed([&] { return trap_composite(f, study.a, study.b, n); });
        series.resolution.push_back(static_cast<double>(n));
        series.error.push_back(std::abs(value - study.reference_value));
        series.wall_time.push_back(seconds);
    }
    return series;
}

Integrand example_nonperiodic() {
    Integrand f;
    f.label = "nonperiodic";
    f.is_periodic_on_domain = false;
    f.eval = [](double x) {
        const double two_pi_x = 2.0 * std::numbers::pi * x;
        const double c = std::cos(two_pi_x);
        const double denom = 1.0 + std::exp(std::sin(two_pi_x));
        return (x * x + 3.0) * c * c / (denom * denom);
    };
    return f;
}

Integrand example_periodic() {
    Integrand f;
    f.label = "periodic";
    f.is_periodic_on_domain = true;
    f.eval = [](double x) {
        const double two_pi_x = 2.0 * std::numbers::pi * x;
        const double c = std::cos(two_pi_x);
        const double denom = 1.0 + std::exp(std::sin(two_pi_x));
        return c * c / (denom * denom);
    };
    return f;
}

double cached_reference(const Integrand& f, double a, double b, long long reference_n,
                        const std::filesystem::path& cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    const std::filesystem::path file =
        cache_dir / ("reference_" + f.label + "_" + std::to_string(reference_n) + ".txt");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        double cached;
        if (in >> cached && std::isfinite(cached)) return cached;
    }
    const double value = trap_composite(f, a, b, reference_n);
    std::ofstream out(file);
    if (!out) throw IoError("cached_reference: cannot write " + file.string());
    out.precision(17);
    out << value << "\n";
    return value;
}

}  // namespace convlab
