#include "convlab/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "convlab/errors.hpp"

namespace convlab {

AbsRel abs_rel_error(double fine, double coarse) {
    AbsRel r;
    r.absolute = std::abs(fine - coarse);
    if (std::abs(fine) < 1e-300) {
        r.relative = std::numeric_limits<double>::quiet_NaN();
        r.relative_defined = false;
    } else {
        r.relative = r.absolute / std::abs(fine);
        r.relative_defined = true;
    }
    return r;
}

std::vector<double> restrict_field(const std::vector<double>& fine, int n_fine, int ratio) {
    if (ratio < 1) throw std::invalid_argument("restrict_field: ratio must be >= 1");
    if (n_fine < 1 || fine.size() != static_cast<std::size_t>(n_fine) * n_fine)
        throw std::invalid_argument("restrict_field: field size does not match n_fine");
    if (n_fine % ratio != 0)
        throw std::invalid_argument("restrict_field: " + std::to_string(n_fine) +
                                    " not divisible by ratio " + std::to_string(ratio));
    const int n_coarse = n_fine / ratio;
    std::vector<double> coarse(static_cast<std::size_t>(n_coarse) * n_coarse);
    for (int j = 0; j < n_coarse; ++j)
        for (int i = 0; i < n_coarse; ++i)
            coarse[static_cast<std::size_t>(j) * n_coarse + i] =
                fine[static_cast<std::size_t>(j) * ratio * n_fine + static_cast<std::size_t>(i) * ratio];
    return coarse;
}

double field_error(const std::vector<double>& fine, int n_fine,
                   const std::vector<double>& coarse, int n_coarse,
                   double p, double h_coarse) {
    if (n_fine % n_coarse != 0)
        throw std::invalid_argument("field_error: grids do not nest");
    const std::vector<double> down = restrict_field(fine, n_fine, n_fine / n_coarse);
    if (coarse.size() != down.size())
        throw std::invalid_argument("field_error: coarse field size mismatch");
    const bool inf_norm = std::isinf(p);
    if (!inf_norm && p != 1.0 && p != 2.0)
        throw std::invalid_argument("field_error: norm selector must be 1, 2, or infinity");
    double acc = 0.0;
    for (std::size_t k = 0; k < down.size(); ++k) {
        const double d = std::abs(down[k] - coarse[k]);
        if (inf_norm)
            acc = std::max(acc, d);
        else
            acc += (p == 1.0 ? d : d * d);
    }
    if (inf_norm) return acc;
    acc *= h_coarse * h_coarse;
    return p == 1.0 ? acc : std::sqrt(acc);
}

std::pair<double, bool> field_error_rel_inf(const std::vector<double>& fine, int n_fine,
                                            const std::vector<double>& coarse, int n_coarse) {
    if (n_fine % n_coarse != 0)
        throw std::invalid_argument("field_error_rel_inf: grids do not nest");
    const std::vector<double> down = restrict_field(fine, n_fine, n_fine / n_coarse);
    if (coarse.size() != down.size())
        throw std::invalid_argument("field_error_rel_inf: coarse field size mismatch");
    double acc = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < down.size(); ++k) {
        if (std::abs(down[k]) < 1e-300) continue;
        acc = std::max(acc, std::abs(down[k] - coarse[k]) / std::abs(down[k]));
        any = true;
    }
    return {any ? acc : std::numeric_limits<double>::quiet_NaN(), any};
}

RateFit fit_rate(const ConvergenceSeries& series, double floor) {
    const std::size_t n = series.resolution.size();
    if (series.error.size() != n)
        throw std::invalid_argument("fit_rate: resolution and error lengths differ");
    double max_err = 0.0;
    for (double e : series.error) max_err = std::max(max_err, e);
    const double cut = floor * std::max(1.0, max_err);

    std::vector<double> lx, ly;
    std::size_t first = n, last = 0;
    int excluded = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (series.error[i] > cut && series.resolution[i] > 0.0) {
            lx.push_back(std::log10(series.resolution[i]));
            ly.push_back(std::log10(series.error[i]));
            first = std::min(first, i);
            last = i;
        } else {
            ++excluded;
        }
    }
    if (lx.size() < 3)
        throw NumericError("fit_rate: fewer than 3 points above the error floor");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw NumericError("fit_rate: degenerate resolution values");

    RateFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.window_begin = first;
    fit.window_end = last + 1;
    fit.excluded_floor_points = excluded;
    for (std::size_t i = 0; i < lx.size(); ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(ly[i] - (fit.intercept + fit.slope * lx[i])));
    return fit;
}

double time_scaling(double factor, int dimension) {
    if (factor < 1.0) throw std::invalid_argument("time_scaling: factor must be >= 1");
    if (dimension < 1) throw std::invalid_argument("time_scaling: dimension must be >= 1");
    return std::pow(factor, dimension);
}

}  // namespace convlab
