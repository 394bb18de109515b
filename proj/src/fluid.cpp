#include "convlab/fluid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

// FFTW's planner is not thread safe; execution of existing plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

inline int wrap(int i, int n) { return i >= n ? i - n : (i < 0 ? i + n : i); }

}  // namespace

struct FluidSolver::Impl {
    int n = 0;
    double length = 0.0;
    double h = 0.0;
    std::vector<double> sx;  // first-difference symbol sin(2 pi q / n) / h
    std::vector<double> k2;  // second-difference symbol (4/h^2) sin^2(pi q / n)
    fftw_complex* a = nullptr;
    fftw_complex* b = nullptr;
    fftw_complex* bu = nullptr;
    fftw_complex* bv = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    std::vector<double> adv_u, adv_v;

    Impl(int n_, double length_) : n(n_), length(length_), h(length_ / n_) {
        if (n < 4) throw std::invalid_argument("FluidSolver: grid must have at least 4 points");
        if (!(length > 0.0)) throw std::invalid_argument("FluidSolver: length must be positive");
        sx.resize(n);
        k2.resize(n);
        for (int m = 0; m < n; ++m) {
            const int q = m <= n / 2 ? m : m - n;  // signed frequency
            sx[m] = std::sin(2.0 * std::numbers::pi * q / n) / h;
            const double s = std::sin(std::numbers::pi * q / n);
            k2[m] = 4.0 / (h * h) * s * s;
        }
        const std::size_t count = static_cast<std::size_t>(n) * n;
        a = fftw_alloc_complex(count);
        b = fftw_alloc_complex(count);
        bu = fftw_alloc_complex(count);
        bv = fftw_alloc_complex(count);
        if (!a || !b || !bu || !bv) throw std::bad_alloc();
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            forward = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
            backward = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        if (!forward || !backward) throw NumericError("FluidSolver: FFT planning failed");
        adv_u.resize(count);
        adv_v.resize(count);
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        fftw_free(a);
        fftw_free(b);
        fftw_free(bu);
        fftw_free(bv);
    }

    // Skew-symmetric advection: 0.5 [u d(u)/dx + v d(u)/dy + d(uu)/dx + d(vu)/dy]
    // with centered periodic differences, and likewise for v.
    void advection(const Field2D& u, const Field2D& v) {
        const double inv2h = 1.0 / (2.0 * h);
        for (int j = 0; j < n; ++j) {
            const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
            for (int i = 0; i < n; ++i) {
                const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
                const double uc = u.at(i, j), vc = v.at(i, j);
                const double dudx = (u.at(ip, j) - u.at(im, j)) * inv2h;
                const double dudy = (u.at(i, jp) - u.at(i, jm)) * inv2h;
                const double dvdx = (v.at(ip, j) - v.at(im, j)) * inv2h;
                const double dvdy = (v.at(i, jp) - v.at(i, jm)) * inv2h;
                const double duu_dx =
                    (u.at(ip, j) * u.at(ip, j) - u.at(im, j) * u.at(im, j)) * inv2h;
                const double dvu_dy =
                    (v.at(i, jp) * u.at(i, jp) - v.at(i, jm) * u.at(i, jm)) * inv2h;
                const double duv_dx =
                    (u.at(ip, j) * v.at(ip, j) - u.at(im, j) * v.at(im, j)) * inv2h;
                const double dvv_dy =
                    (v.at(i, jp) * v.at(i, jp) - v.at(i, jm) * v.at(i, jm)) * inv2h;
                const std::size_t k = static_cast<std::size_t>(j) * n + i;
                adv_u[k] = 0.5 * (uc * dudx + vc * dudy + duu_dx + dvu_dy);
                adv_v[k] = 0.5 * (uc * dvdx + vc * dvdy + duv_dx + dvv_dy);
            }
        }
    }
};

FluidSolver::FluidSolver(int n, double length) : impl_(std::make_unique<Impl>(n, length)) {}
FluidSolver::~FluidSolver() = default;
int FluidSolver::n() const { return impl_->n; }
double FluidSolver::length() const { return impl_->length; }

void FluidSolver::step(FluidState& state, const ForceField* force, const FluidParams& prm) {
    Impl& im = *impl_;
    const int n = im.n;
    if (state.n != n || state.length != im.length)
        throw std::invalid_argument("FluidSolver::step: state does not match the solver grid");
    if (force && (force->fx.n != n || force->fy.n != n))
        throw std::invalid_argument("FluidSolver::step: force field size mismatch");
    if (!(prm.rho > 0.0) || !(prm.mu > 0.0) || !(prm.dt > 0.0))
        throw std::invalid_argument("FluidSolver::step: parameters must be positive");

    const double h = im.h;
    const double dt = prm.dt;
    const double speed = max_speed(state);
    if (speed * dt / h > 1.0) {
        std::ostringstream msg;
        msg << "ns_step: advective Courant number " << speed * dt / h
            << " exceeds 1, reduce dt";
        throw NumericError(msg.str());
    }

    im.advection(state.u, state.v);

    const std::size_t count = static_cast<std::size_t>(n) * n;
    for (std::size_t k = 0; k < count; ++k) {
        double fu = 0.0, fv = 0.0;
        if (force) {
            fu = force->fx.v[k] / prm.rho;
            fv = force->fy.v[k] / prm.rho;
        }
        im.a[k][0] = state.u.v[k] + dt * (-im.adv_u[k] + fu);
        im.a[k][1] = 0.0;
        im.bu[k][0] = 0.0;
        im.bu[k][1] = 0.0;
    }
    fftw_execute_dft(im.forward, im.a, im.bu);
    for (std::size_t k = 0; k < count; ++k) {
        double fv = force ? force->fy.v[k] / prm.rho : 0.0;
        im.a[k][0] = state.v.v[k] + dt * (-im.adv_v[k] + fv);
        im.a[k][1] = 0.0;
    }
    fftw_execute_dft(im.forward, im.a, im.bv);

    // Mode loop: project onto the discrete divergence-free subspace, then
    // divide by the implicit diffusion factor. Modes where both symbols
    // vanish (the mean and the Nyquist checkerboards, where the centered
    // difference is blind) skip the projection. The pressure recovery uses
    // a stricter gate: near the checkerboards the velocity projection is
    // well conditioned but dividing by the almost-zero symbol would blow
    // the pressure mode up, so it is simply left at zero there.
    const double visc = prm.mu * dt / prm.rho;
    const double s2_floor = 1e-30;
    const double s2_pressure_floor = 1e-20 / (h * h);
    std::vector<std::complex<double>> phat(count);
    for (int j = 0; j < n; ++j) {
        const double sy = im.sx[j];
        for (int i = 0; i < n; ++i) {
            const double sxv = im.sx[i];
            const std::size_t k = static_cast<std::size_t>(j) * n + i;
            std::complex<double> hu(im.bu[k][0], im.bu[k][1]);
            std::complex<double> hv(im.bv[k][0], im.bv[k][1]);
            const double s2 = sxv * sxv + sy * sy;
            std::complex<double> hp(0.0, 0.0);
            if (s2 > s2_floor) {
                const std::complex<double> g = (sxv * hu + sy * hv) / s2;
                hu -= sxv * g;
                hv -= sy * g;
                if (s2 > s2_pressure_floor)
                    hp = std::complex<double>(0.0, -1.0) * (prm.rho / dt) * g;
            }
            const double denom = 1.0 + visc * (im.k2[i] + im.k2[j]);
            hu /= denom;
            hv /= denom;
            im.bu[k][0] = hu.real();
            im.bu[k][1] = hu.imag();
            im.bv[k][0] = hv.real();
            im.bv[k][1] = hv.imag();
            phat[k] = hp;
        }
    }

    const double norm = 1.0 / static_cast<double>(count);
    fftw_execute_dft(im.backward, im.bu, im.b);
    for (std::size_t k = 0; k < count; ++k) state.u.v[k] = im.b[k][0] * norm;
    fftw_execute_dft(im.backward, im.bv, im.b);
    for (std::size_t k = 0; k < count; ++k) state.v.v[k] = im.b[k][0] * norm;
    for (std::size_t k = 0; k < count; ++k) {
        im.a[k][0] = phat[k].real();
        im.a[k][1] = phat[k].imag();
    }
    fftw_execute_dft(im.backward, im.a, im.b);
    if (state.p.n != n) state.p = Field2D(n);
    for (std::size_t k = 0; k < count; ++k) state.p.v[k] = im.b[k][0] * norm;

    for (std::size_t k = 0; k < count; ++k)
        if (!std::isfinite(state.u.v[k]) || !std::isfinite(state.v.v[k]))
            throw NumericError("ns_step: non-finite velocity after the step");
}

FluidState ns_step(const FluidState& state, const ForceField& force, const FluidParams& prm) {
    FluidSolver solver(state.n, state.length);
    FluidState out = state;
    solver.step(out, &force, prm);
    return out;
}

Field2D divergence(const FluidState& state) {
    const int n = state.n;
    const double inv2h = 1.0 / (2.0 * state.h());
    Field2D d(n);
    for (int j = 0; j < n; ++j) {
        const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
        for (int i = 0; i < n; ++i) {
            const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
            d.at(i, j) = (state.u.at(ip, j) - state.u.at(im, j)) * inv2h +
                         (state.v.at(i, jp) - state.v.at(i, jm)) * inv2h;
        }
    }
    return d;
}

Field2D vorticity(const FluidState& state) {
    const int n = state.n;
    const double inv2h = 1.0 / (2.0 * state.h());
    Field2D w(n);
    for (int j = 0; j < n; ++j) {
        const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
        for (int i = 0; i < n; ++i) {
            const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
            w.at(i, j) = (state.v.at(ip, j) - state.v.at(im, j)) * inv2h -
                         (state.u.at(i, jp) - state.u.at(i, jm)) * inv2h;
        }
    }
    return w;
}

double max_speed(const FluidState& state) {
    double worst = 0.0;
    for (std::size_t k = 0; k < state.u.v.size(); ++k) {
        const double s = std::hypot(state.u.v[k], state.v.v[k]);
        worst = std::max(worst, s);
    }
    return worst;
}

double kinetic_energy(const FluidState& state) {
    const double h = state.h();
    double e = 0.0;
    for (std::size_t k = 0; k < state.u.v.size(); ++k)
        e += state.u.v[k] * state.u.v[k] + state.v.v[k] * state.v.v[k];
    return e * h * h;
}

}  // namespace convlab
