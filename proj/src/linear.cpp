#include "linear.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace skdv {

SchrodingerSolver::SchrodingerSolver(const HalfLineGrid& grid)
    : grid_(grid), system_(grid.nodes(), 1, 1), rhs_(grid.nodes()) {}

void SchrodingerSolver::assemble(double dt) {
    const int n = grid_.nodes();
    const cplx a(0.0, 0.5 * dt / (grid_.h * grid_.h));
    system_.clear();
    system_.set(0, 0, 1.0);
    for (int j = 1; j < n - 1; ++j) {
        system_.set(j, j - 1, -a);
        system_.set(j, j, 1.0 + 2.0 * a);
        system_.set(j, j + 1, -a);
    }
    system_.set(n - 1, n - 1, 1.0);
    system_.factor();
    cached_dt_ = dt;
}

void SchrodingerSolver::step(std::span<cplx> u, double dt, cplx boundary_new,
                             std::span<const cplx> forcing) {
    const int n = grid_.nodes();
    if (static_cast<int>(u.size()) != n) throw std::invalid_argument("field size does not match grid");
    if (!system_.factored() || dt != cached_dt_) assemble(dt);
    const cplx a(0.0, 0.5 * dt / (grid_.h * grid_.h));
    const cplx mi_dt(0.0, -dt);
    rhs_[0] = boundary_new;
    for (int j = 1; j < n - 1; ++j) {
        rhs_[j] = u[j] + a * (u[j + 1] - 2.0 * u[j] + u[j - 1]);
        if (!forcing.empty()) rhs_[j] += mi_dt * forcing[j];
    }
    rhs_[n - 1] = 0.0;
    system_.solve(rhs_);
    std::copy(rhs_.begin(), rhs_.end(), u.begin());
}

AirySolver::AirySolver(const HalfLineGrid& grid)
    : grid_(grid), d3_(grid.nodes()), system_(grid.nodes(), 3, 3), rhs_(grid.nodes()) {
    const int n = grid.nodes();
    const double h3 = grid.h * grid.h * grid.h;
    auto make = [&](int first, int center) {
        std::vector<double> offs(5);
        for (int k = 0; k < 5; ++k) offs[k] = first + k - center;
        Row r;
        r.first = first;
        r.w = fd_weights(0.0, offs, 3);
        for (double& w : r.w) w *= grid.sigma() / h3;
        return r;
    };
    for (int j = 0; j < n; ++j) {
        if (!is_pde_row(j)) continue;
        int first = j - 2;
        if (first < 0) first = 0;
        if (first + 4 > n - 1) first = n - 5;
        d3_[j] = make(first, j);
    }
}

bool AirySolver::is_pde_row(int j) const {
    const int n = grid_.nodes();
    if (grid_.direction == Direction::Right) return j >= 1 && j <= n - 3;
    return j >= 2 && j <= n - 2;
}

double AirySolver::third_derivative(std::span<const double> v, int j) const {
    if (!is_pde_row(j)) throw std::out_of_range("not an interior row");
    const Row& r = d3_[j];
    double s = 0.0;
    for (std::size_t k = 0; k < r.w.size(); ++k) s += r.w[k] * v[r.first + k];
    return s;
}

void AirySolver::assemble(double dt) {
    const int n = grid_.nodes();
    const double h = grid_.h;
    system_.clear();
    system_.set(0, 0, 1.0);
    if (grid_.direction == Direction::Left) {
        system_.set(1, 0, -3.0 / (2.0 * h));
        system_.set(1, 1, 4.0 / (2.0 * h));
        system_.set(1, 2, -1.0 / (2.0 * h));
    } else {
        system_.set(n - 2, n - 1, 3.0 / (2.0 * h));
        system_.set(n - 2, n - 2, -4.0 / (2.0 * h));
        system_.set(n - 2, n - 3, 1.0 / (2.0 * h));
    }
    for (int j = 0; j < n; ++j) {
        if (!is_pde_row(j)) continue;
        const Row& r = d3_[j];
        for (std::size_t k = 0; k < r.w.size(); ++k) {
            int col = r.first + static_cast<int>(k);
            double val = 0.5 * dt * r.w[k] + (col == j ? 1.0 : 0.0);
            system_.set(j, col, val);
        }
    }
    system_.set(n - 1, n - 1, 1.0);
    system_.factor();
    cached_dt_ = dt;
}

void AirySolver::step(std::span<double> v, double dt, KdvBoundary bc_new,
                      std::span<const double> forcing) {
    const int n = grid_.nodes();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("field size does not match grid");
    if (!system_.factored() || dt != cached_dt_) assemble(dt);
    for (int j = 0; j < n; ++j) {
        if (!is_pde_row(j)) continue;
        rhs_[j] = v[j] - 0.5 * dt * third_derivative(v, j);
        if (!forcing.empty()) rhs_[j] += dt * forcing[j];
    }
    rhs_[0] = bc_new.g;
    if (grid_.direction == Direction::Left) rhs_[1] = grid_.sigma() * bc_new.h;
    else rhs_[n - 2] = 0.0;
    rhs_[n - 1] = 0.0;
    system_.solve(rhs_);
    std::copy(rhs_.begin(), rhs_.end(), v.begin());
}

namespace {

// Multiplies the spectrum of a zero-padded copy by symbol(xi) and returns the
// original sample window.
template <class Symbol>
std::vector<cplx> spectral_propagate(std::span<const cplx> data, double h, int padding,
                                     Symbol symbol) {
    const int n = static_cast<int>(data.size());
    if (padding < 4) throw RangeError("padding must be at least 4");
    double peak = 0.0;
    for (const auto& z : data) peak = std::max(peak, std::abs(z));
    const double tol = 1e-10 * std::max(peak, 1e-300);
    if (peak > 0.0 && (std::abs(data.front()) > tol || std::abs(data.back()) > tol))
        throw RangeError("support check failed: data not negligible at the ends of the window");
    const int m = padding * n;
    const int offset = (m - n) / 2;
    std::vector<cplx> buf(m, 0.0);
    std::copy(data.begin(), data.end(), buf.begin() + offset);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan fwd = fftw_plan_dft_1d(m, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(m, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    const double dk = 2.0 * std::numbers::pi / (m * h);
    for (int k = 0; k < m; ++k) {
        int kk = k <= m / 2 ? k : k - m;
        // Grid origin sits at index `offset`; shifting does not affect |symbol| = 1.
        buf[k] *= symbol(kk * dk) / static_cast<double>(m);
    }
    fftw_execute(bwd);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    return std::vector<cplx>(buf.begin() + offset, buf.begin() + offset + n);
}

}  // namespace

LineSamples<cplx> free_schrodinger(const LineSamples<cplx>& u0, double t, int padding) {
    LineSamples<cplx> out{u0.x0, u0.h, {}};
    if (t == 0.0) {
        out.values = u0.values;
        return out;
    }
    out.values = spectral_propagate(u0.values, u0.h, padding,
                                    [t](double xi) { return std::polar(1.0, -xi * xi * t); });
    return out;
}

LineSamples<double> free_airy(const LineSamples<double>& v0, double t, int padding) {
    LineSamples<double> out{v0.x0, v0.h, {}};
    if (t == 0.0) {
        out.values = v0.values;
        return out;
    }
    std::vector<cplx> data(v0.values.begin(), v0.values.end());
    const double nyquist = std::numbers::pi / v0.h * (1.0 - 1e-12);
    auto res = spectral_propagate(data, v0.h, padding, [t, nyquist](double xi) {
        // The Nyquist mode has no sign; keep it real so the output stays real.
        if (std::abs(xi) >= nyquist) return cplx(std::cos(xi * xi * xi * t), 0.0);
        return std::polar(1.0, xi * xi * xi * t);
    });
    out.values.resize(res.size());
    for (std::size_t k = 0; k < res.size(); ++k) out.values[k] = res[k].real();
    return out;
}

namespace {

// Physical-coordinate window [-L, L] holding the half-line data and zeros elsewhere.
template <class T>
LineSamples<T> embed(const HalfLineGrid& grid, std::span<const T> field) {
    const int n = grid.nodes();
    LineSamples<T> s;
    s.h = grid.h;
    s.x0 = -grid.length;
    s.values.assign(2 * n - 1, T(0));
    for (int j = 0; j < n; ++j) {
        int k = grid.direction == Direction::Right ? (n - 1) + j : (n - 1) - j;
        s.values[k] = field[j];
    }
    return s;
}

template <class T>
std::vector<T> extract(const HalfLineGrid& grid, const LineSamples<T>& s) {
    const int n = grid.nodes();
    std::vector<T> out(n);
    for (int j = 0; j < n; ++j) {
        int k = grid.direction == Direction::Right ? (n - 1) + j : (n - 1) - j;
        out[j] = s.values[k];
    }
    return out;
}

}  // namespace

std::vector<cplx> free_schrodinger_reference(const HalfLineGrid& grid, std::span<const cplx> u0,
                                             double t) {
    return extract(grid, free_schrodinger(embed(grid, u0), t));
}

std::vector<double> free_airy_reference(const HalfLineGrid& grid, std::span<const double> v0,
                                        double t) {
    return extract(grid, free_airy(embed(grid, v0), t));
}

}  // namespace skdv
