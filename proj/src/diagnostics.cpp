#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "banded.hpp"
#include "errors.hpp"

namespace skdv {

namespace {

template <class T>
std::vector<T> d_x(const HalfLineGrid& grid, std::span<const T> f) {
    const int n = grid.nodes();
    const double c = grid.sigma() / (2.0 * grid.h);
    std::vector<T> d(n);
    d[0] = c * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    for (int j = 1; j < n - 1; ++j) d[j] = c * (f[j + 1] - f[j - 1]);
    d[n - 1] = c * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
    return d;
}

// Weights for the derivative of given order at samples[i] from neighbouring samples.
std::vector<double> local_weights(const std::vector<double>& ts, std::size_t i, int order,
                                  std::size_t& first) {
    const std::size_t width = order == 1 ? 3 : (i == 0 || i + 1 == ts.size() ? 4 : 3);
    const std::size_t n = ts.size();
    if (n < width) {
        first = 0;
        return {};
    }
    std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    if (lo + width > n) lo = n - width;
    first = lo;
    std::vector<double> nodes(ts.begin() + lo, ts.begin() + lo + width);
    return fd_weights(ts[i], nodes, order);
}

template <class T, class Get>
T time_derivative(const std::vector<double>& ts, std::size_t i, int order, Get get) {
    std::size_t first = 0;
    auto w = local_weights(ts, i, order, first);
    T s{};
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * get(first + k);
    return s;
}

}  // namespace

std::vector<cplx> derivative_x(const HalfLineGrid& grid, std::span<const cplx> f) { return d_x(grid, f); }
std::vector<double> derivative_x(const HalfLineGrid& grid, std::span<const double> f) { return d_x(grid, f); }

BoundaryTraces extract_traces(const HalfLineGrid& grid, const FieldState& s) {
    if (grid.nodes() < 4) throw ConfigError("trace extraction needs at least 4 nodes");
    BoundaryTraces tr;
    const double h = grid.h, sg = grid.sigma();
    tr.t = s.t;
    tr.u0 = s.u[0];
    tr.ux0 = sg * (-3.0 * s.u[0] + 4.0 * s.u[1] - s.u[2]) / (2.0 * h);
    tr.v0 = s.v[0];
    tr.vx0 = sg * (-3.0 * s.v[0] + 4.0 * s.v[1] - s.v[2]) / (2.0 * h);
    tr.vxx0 = (2.0 * s.v[0] - 5.0 * s.v[1] + 4.0 * s.v[2] - s.v[3]) / (h * h);
    return tr;
}

void fill_time_derivatives(std::vector<BoundaryTraces>& history) {
    const std::size_t n = history.size();
    if (n < 2) {
        for (auto& h : history) {
            h.ut0 = 0.0;
            h.vt0 = h.vxt0 = 0.0;
        }
        return;
    }
    if (n == 2) {
        const double dt = history[1].t - history[0].t;
        cplx ut = (history[1].u0 - history[0].u0) / dt;
        double vt = (history[1].v0 - history[0].v0) / dt;
        double vxt = (history[1].vx0 - history[0].vx0) / dt;
        for (auto& h : history) {
            h.ut0 = ut;
            h.vt0 = vt;
            h.vxt0 = vxt;
        }
        return;
    }
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = history[i].t;
    std::vector<cplx> ut(n);
    std::vector<double> vt(n), vxt(n);
    for (std::size_t i = 0; i < n; ++i) {
        ut[i] = time_derivative<cplx>(ts, i, 1, [&](std::size_t k) { return history[k].u0; });
        vt[i] = time_derivative<double>(ts, i, 1, [&](std::size_t k) { return history[k].v0; });
        vxt[i] = time_derivative<double>(ts, i, 1, [&](std::size_t k) { return history[k].vx0; });
    }
    for (std::size_t i = 0; i < n; ++i) {
        history[i].ut0 = ut[i];
        history[i].vt0 = vt[i];
        history[i].vxt0 = vxt[i];
    }
}

double mass(const HalfLineGrid& grid, const FieldState& s) {
    return weighted_norm_sq(grid, std::span<const cplx>(s.u), 0);
}

double moment_Q(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p) {
    return compute_functionals(grid, s, p).Q;
}

double energy_E(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p) {
    return compute_functionals(grid, s, p).E;
}

double p_functional(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p) {
    return weighted_norm_sq(grid, std::span<const cplx>(s.u), 1) +
           2.0 * std::abs(p.ratio()) * weighted_norm_sq(grid, std::span<const double>(s.v), 1);
}

Functionals compute_functionals(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p) {
    const int n = grid.nodes();
    const auto ux = derivative_x(grid, std::span<const cplx>(s.u));
    const auto vx = derivative_x(grid, std::span<const double>(s.v));
    const double r = p.ratio();
    double m = 0, im = 0, vsq = 0, ux2 = 0, vx2 = 0, u4 = 0, v3 = 0, vu2 = 0;
    double wu1 = 0, wv1 = 0, wu2 = 0;
    for (int j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        const double u2 = std::norm(s.u[j]);
        const double v = s.v[j];
        const double d = grid.dist(j);
        m += w * u2;
        im += w * std::imag(s.u[j] * std::conj(ux[j]));
        vsq += w * v * v;
        ux2 += w * std::norm(ux[j]);
        vx2 += w * vx[j] * vx[j];
        u4 += w * u2 * u2;
        v3 += w * v * v * v;
        vu2 += w * v * u2;
        wu1 += w * d * u2;
        wv1 += w * d * v * v;
        wu2 += w * d * d * u2;
    }
    const double h = grid.h;
    Functionals f;
    f.M = m * h;
    f.im_u_ux = im * h;
    f.v_sq = vsq * h;
    f.Q = r * f.v_sq + 2.0 * f.im_u_ux;
    f.E = h * (p.alpha * vu2 - r / 6.0 * v3 + 0.5 * p.beta * u4 + 0.5 * r * vx2 + ux2);
    f.w_u1 = wu1 * h;
    f.w_v1 = wv1 * h;
    f.w_u2 = wu2 * h;
    f.P = f.w_u1 + 2.0 * std::abs(r) * f.w_v1;
    f.eta_d2_rhs = h * (8.0 * ux2 + 6.0 * r * vx2 + 2.0 * p.beta * u4 - 4.0 * r / 3.0 * v3 +
                        4.0 * p.alpha * vu2) -
                   2.0 * f.im_u_ux;
    return f;
}

Fluxes fluxes(const BoundaryTraces& tr, const CouplingParams& p) {
    const double r = p.ratio();
    Fluxes fl;
    fl.mass = 2.0 * std::imag(tr.ux0 * std::conj(tr.u0));
    const double u2 = std::norm(tr.u0);
    fl.Qu = 2.0 * std::norm(tr.ux0) + 2.0 * std::imag(tr.u0 * std::conj(tr.ut0)) - p.beta * u2 * u2;
    fl.Qv = r * tr.vx0 * tr.vx0 - 2.0 * r * tr.vxx0 * tr.v0 - 2.0 * r / 3.0 * tr.v0 * tr.v0 * tr.v0;
    fl.E1 = 2.0 * std::real(tr.ux0 * std::conj(tr.ut0)) + r * tr.vx0 * tr.vt0;
    const double b = tr.vxx0 + 0.5 * tr.v0 * tr.v0 - p.gamma * u2;
    fl.E2 = 0.5 * r * b * b;
    return fl;
}

VirialInitial initial_virial_data(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p) {
    if (grid.direction != Direction::Left)
        throw ConfigError("virial quantities are defined on the left half-line only");
    const auto ux = derivative_x(grid, std::span<const cplx>(s.u));
    const int n = grid.nodes();
    double im = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        im += w * grid.x(j) * std::imag(std::conj(s.u[j]) * ux[j]);
    }
    VirialInitial vi;
    vi.eta0 = weighted_norm_sq(grid, std::span<const cplx>(s.u), 2);
    vi.eta0_d1 = 4.0 * im * grid.h +
                 2.0 * p.ratio() * weighted_norm_sq(grid, std::span<const double>(s.v), 1) -
                 weighted_norm_sq(grid, std::span<const cplx>(s.u), 1);
    return vi;
}

LawResiduals law_residuals(const TimeSeries& series, const CouplingParams& p, Direction direction,
                           const FluxFunction& flux) {
    LawResiduals out;
    const std::size_t nh = series.history.size();
    const std::size_t ns = series.snapshots.size();
    if (ns == 0) return out;
    if (nh <= 1) {
        for (const auto& sn : series.snapshots) {
            FunctionalRecord rec;
            rec.t = sn.t;
            rec.M = sn.f.M;
            rec.Q = sn.f.Q;
            rec.E = sn.f.E;
            rec.w_u1 = sn.f.w_u1;
            rec.w_v1 = sn.f.w_v1;
            rec.w_u2 = sn.f.w_u2;
            rec.P = sn.f.P;
            if (direction == Direction::Left) {
                rec.eta = sn.f.w_u2;
                rec.eta_d2_rhs = sn.f.eta_d2_rhs;
            }
            out.records.push_back(rec);
        }
        return out;
    }
    if (nh < 3) throw ConfigError("law residuals need at least three trace samples");

    std::vector<BoundaryTraces> tr(nh);
    std::vector<double> ts(nh);
    for (std::size_t i = 0; i < nh; ++i) {
        tr[i] = series.history[i].traces;
        ts[i] = tr[i].t;
    }
    fill_time_derivatives(tr);
    std::vector<Fluxes> fl(nh);
    for (std::size_t i = 0; i < nh; ++i) fl[i] = flux(tr[i], p);

    // cumulative trapezoid integrals
    std::vector<double> im(nh, 0.0), iq(nh, 0.0), ie(nh, 0.0), iwu(nh, 0.0), iwv(nh, 0.0);
    for (std::size_t i = 1; i < nh; ++i) {
        const double dt = 0.5 * (ts[i] - ts[i - 1]);
        im[i] = im[i - 1] + dt * (fl[i].mass + fl[i - 1].mass);
        iq[i] = iq[i - 1] + dt * (fl[i].Qu + fl[i].Qv + fl[i - 1].Qu + fl[i - 1].Qv);
        ie[i] = ie[i - 1] + dt * (fl[i].E1 + fl[i].E2 + fl[i - 1].E1 + fl[i - 1].E2);
        iwu[i] = iwu[i - 1] + dt * (series.history[i].w_u1 + series.history[i - 1].w_u1);
        iwv[i] = iwv[i - 1] + dt * (series.history[i].w_v1 + series.history[i - 1].w_v1);
    }

    const double sgn = direction == Direction::Right ? 1.0 : -1.0;
    const double r = p.ratio();
    const bool left = direction == Direction::Left;
    const Functionals& f0 = series.snapshots.front().f;
    auto scale = [](double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); };

    std::vector<double> st(ns), eta(ns);
    for (std::size_t k = 0; k < ns; ++k) {
        const Snapshot& sn = series.snapshots[k];
        const std::size_t i = sn.history_index;
        FunctionalRecord rec;
        rec.t = sn.t;
        rec.M = sn.f.M;
        rec.Q = sn.f.Q;
        rec.E = sn.f.E;
        rec.Qu = fl[i].Qu;
        rec.Qv = fl[i].Qv;
        rec.E1 = fl[i].E1;
        rec.E2 = fl[i].E2;
        rec.w_u1 = sn.f.w_u1;
        rec.w_v1 = sn.f.w_v1;
        rec.w_u2 = sn.f.w_u2;
        rec.P = sn.f.P;
        rec.int_mass_flux = im[i];
        rec.int_moment_flux = iq[i];
        rec.int_energy_flux = ie[i];
        rec.r_mass = std::abs(sn.f.M - (f0.M + sgn * im[i])) / scale(f0.M, sn.f.M);
        const double q_law = f0.Q - sgn * iq[i];
        rec.r_moment = std::abs(sn.f.Q - q_law) / scale(f0.Q, sn.f.Q);
        rec.r_energy = std::abs(sn.f.E - (f0.E - sgn * ie[i])) / scale(f0.E, sn.f.E);
        const double rate = time_derivative<double>(ts, i, 1, [&](std::size_t q) { return series.history[q].w_u1; });
        const double predicted = sgn * (r * sn.f.v_sq - q_law);
        rec.r_first_moment_rate = std::abs(rate - predicted) / std::max(1.0, std::abs(predicted));
        if (left) {
            rec.eta = sn.f.w_u2 + 2.0 * r * iwv[i] - iwu[i];
            rec.eta_d2_rhs = sn.f.eta_d2_rhs;
        }
        st[k] = sn.t;
        eta[k] = rec.eta;
        out.records.push_back(rec);
    }

    if (left && ns >= 4) {
        for (std::size_t k = 0; k < ns; ++k) {
            auto& rec = out.records[k];
            rec.eta_d1 = time_derivative<double>(st, k, 1, [&](std::size_t q) { return eta[q]; });
            rec.eta_d2_fd = time_derivative<double>(st, k, 2, [&](std::size_t q) { return eta[q]; });
            rec.r_virial = std::abs(rec.eta_d2_fd - rec.eta_d2_rhs) / std::max(1.0, std::abs(rec.eta_d2_rhs));
        }
        const double t_mid = 0.5 * (st.front() + st.back());
        std::size_t mid = 1;
        for (std::size_t k = 1; k + 1 < ns; ++k) {
            out.r_virial_max = std::max(out.r_virial_max, out.records[k].r_virial);
            if (std::abs(st[k] - t_mid) < std::abs(st[mid] - t_mid)) mid = k;
        }
        out.r_virial = out.records[mid].r_virial;
    }

    for (const auto& rec : out.records) {
        out.r_mass = std::max(out.r_mass, rec.r_mass);
        out.r_moment = std::max(out.r_moment, rec.r_moment);
        out.r_energy = std::max(out.r_energy, rec.r_energy);
        out.r_first_moment_rate = std::max(out.r_first_moment_rate, rec.r_first_moment_rate);
    }
    out.int_mass_flux = im.back();
    out.int_moment_flux = iq.back();
    out.int_energy_flux = ie.back();
    return out;
}

}  // namespace skdv
