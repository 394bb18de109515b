#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "convlab/convergence.hpp"

namespace convlab {

struct Integrand {
    std::function<double(double)> eval;
    std::string label;
    std::function<double(double)> second_derivative;  // empty when unavailable
    bool is_periodic_on_domain = false;
};

struct QuadStudy {
    double a = 0.0;
    double b = 1.0;
    std::vector<long long> n_list;
    double reference_value = 0.0;
    long long reference_n = 10'000'000;
};

// Composite trapezoid value over n uniform subintervals, accumulated with
// compensated summation so the machine-precision floor survives large n.
double trap_composite(const Integrand& f, double a, double b, long long n);

double trap_error_bound(double k_max, double a, double b, long long n);

// Max |f''| over [a, b]; analytic second derivative when present, otherwise
// a central difference with step 1e-5*(b-a), sampled at 100001 points.
double estimate_k(const Integrand& f, double a, double b);

// Error against the study's reference for each n, with per-point wall time.
ConvergenceSeries trap_study(const QuadStudy& study, const Integrand& f);

// The two built-in integrands on [0, 1].
Integrand example_nonperiodic();  // (x^2+3) cos^2(2 pi x) / (1+exp(sin(2 pi x)))^2
Integrand example_periodic();     //         cos^2(2 pi x) / (1+exp(sin(2 pi x)))^2

// Reference value at reference_n, cached in cache_dir keyed by the integrand
// label so reruns skip the long evaluation.
double cached_reference(const Integrand& f, double a, double b, long long reference_n,
                        const std::filesystem::path& cache_dir);

}  // namespace convlab
