#include "stepper.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace skdv {

void validate_config(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be positive");
    if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) throw ConfigError("t_final must be non-negative");
    if (cfg.t_final > 0.0 && cfg.t_final < cfg.dt * (1.0 - 1e-12))
        throw ConfigError("t_final must be at least dt");
    if (cfg.stride < 1) throw ConfigError("sample stride must be at least 1");
    make_coupling(cfg.coupling.alpha, cfg.coupling.beta, cfg.coupling.gamma);
    build_grid(cfg.direction, cfg.length, cfg.cells);
    if (cfg.direction == Direction::Right && !cfg.signals.h.is_zero())
        throw ConfigError("the derivative signal h applies to the left half-line only");
}

CoupledStepper::CoupledStepper(const HalfLineGrid& grid, const CouplingParams& p,
                               const BoundarySignals& signals, std::shared_ptr<const ExternalForcing> forcing)
    : grid_(grid), p_(p), signals_(signals), forcing_(std::move(forcing)), schrodinger_(grid), airy_(grid) {
    const int n = grid.nodes();
    psi0_.resize(n);
    psi1_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double y = grid.dist(j);
        psi0_[j] = std::exp(-y * y);
        psi1_[j] = y * std::exp(-y * y);
    }
    dpsi1_ = (-3.0 * psi1_[0] + 4.0 * psi1_[1] - psi1_[2]) / (2.0 * grid.h);
    for (auto* b : {&flux_, &rate_, &removed_, &vtmp_, &q_start_, &q_end_, &vsrc_}) b->assign(n, 0.0);
    usrc_.assign(n, 0.0);
}

void CoupledStepper::check(const FieldState& s, const char* where) const {
    if (!all_finite(s)) {
        std::ostringstream os;
        os << "non-finite values after the " << where << " at t = " << s.t;
        throw NumericalHalt(os.str(), s.t);
    }
}

void CoupledStepper::kdv_rate(const std::vector<cplx>& u, const std::vector<double>& v, std::vector<double>& rate,
                              std::vector<double>& removed) {
    const int n = grid_.nodes();
    for (int j = 0; j < n; ++j) flux_[j] = 0.5 * v[j] * v[j] - p_.gamma * std::norm(u[j]);
    const double c = -grid_.sigma() / (2.0 * grid_.h);
    rate[0] = c * (-3.0 * flux_[0] + 4.0 * flux_[1] - flux_[2]);
    for (int j = 1; j < n - 1; ++j) rate[j] = c * (flux_[j + 1] - flux_[j - 1]);
    rate[n - 1] = 0.0;
    const double c0 = rate[0];
    for (int j = 0; j < n; ++j) {
        removed[j] = c0 * psi0_[j];
        rate[j] -= removed[j];
    }
    if (grid_.direction == Direction::Left) {
        const double d = (-3.0 * rate[0] + 4.0 * rate[1] - rate[2]) / (2.0 * grid_.h);
        const double c1 = d / dpsi1_;
        for (int j = 0; j < n; ++j) {
            removed[j] += c1 * psi1_[j];
            rate[j] -= c1 * psi1_[j];
        }
    }
}

void CoupledStepper::rotate_u(FieldState& s, double tau) {
    // u_t = -i N u + i N_0 u_0 psi0 with N = alpha v + beta |u|^2 frozen:
    // u(tau) = u e^{-i N tau} + i N_0 u_0 psi0 tau phi(N tau), phi(x) = (1 - e^{-ix}) / (ix).
    const int n = grid_.nodes();
    const cplx i(0.0, 1.0);
    const cplx u0 = s.u[0];
    const cplx c = i * (p_.alpha * s.v[0] + p_.beta * std::norm(u0)) * u0;
    for (int j = 0; j < n; ++j) {
        const double theta = (p_.alpha * s.v[j] + p_.beta * std::norm(s.u[j])) * tau;
        const cplx e = std::polar(1.0, -theta);
        cplx phi;
        if (std::abs(theta) < 1e-4) phi = 1.0 - 0.5 * i * theta - theta * theta / 6.0;
        else phi = (1.0 - e) / (i * theta);
        s.u[j] = s.u[j] * e + c * psi0_[j] * tau * phi;
    }
    s.u[0] = u0;
}

void CoupledStepper::nonlinear_substep(FieldState& s, double tau) {
    const int n = grid_.nodes();
    const double half = 0.5 * tau;
    auto v_half_step = [&]() {
        kdv_rate(s.u, s.v, rate_, removed_);
        for (int j = 0; j < n; ++j) vtmp_[j] = s.v[j] + 0.5 * half * rate_[j];
        kdv_rate(s.u, vtmp_, rate_, removed_);
        for (int j = 0; j < n; ++j) s.v[j] += half * rate_[j];
    };
    v_half_step();
    rotate_u(s, tau);
    v_half_step();
    check(s, "nonlinear substep");
}

void CoupledStepper::linear_step(FieldState& s, double dt) {
    const int n = grid_.nodes();
    const double t0 = s.t, t1 = s.t + dt;
    const cplx f0 = signals_.f(t0), f1 = signals_.f(t1);
    const double g0 = signals_.g(t0).real(), g1 = signals_.g(t1).real();
    const double h1 = signals_.h(t1).real();
    // boundary part removed from the nonlinear Schrodinger substep
    const cplx b0 = (p_.alpha * g0 + p_.beta * std::norm(f0)) * f0;
    const cplx b1 = (p_.alpha * g1 + p_.beta * std::norm(f1)) * f1;
    for (int j = 0; j < n; ++j) {
        usrc_[j] = 0.5 * (b0 + b1) * psi0_[j];
        vsrc_[j] = 0.0;
    }
    if (forcing_) {
        for (int j = 0; j < n; ++j) {
            const double x = grid_.x(j);
            if (forcing_->fu) usrc_[j] += 0.5 * (forcing_->fu(x, t0) + forcing_->fu(x, t1));
            if (forcing_->fv) vsrc_[j] += 0.5 * (forcing_->fv(x, t0) + forcing_->fv(x, t1));
        }
    }
    u_before_ = s.u;
    schrodinger_.step(s.u, dt, f1, usrc_);

    // The KdV source depends on the state; predict the end value, then average.
    kdv_rate(u_before_, s.v, rate_, q_start_);
    vtmp_ = s.v;
    for (int j = 0; j < n; ++j) rate_[j] = vsrc_[j] + q_start_[j];
    airy_.step(vtmp_, dt, {g1, h1}, rate_);
    kdv_rate(s.u, vtmp_, rate_, q_end_);
    for (int j = 0; j < n; ++j) rate_[j] = vsrc_[j] + 0.5 * (q_start_[j] + q_end_[j]);
    airy_.step(s.v, dt, {g1, h1}, rate_);
    s.t = t1;
    check(s, "linear step");
}

void CoupledStepper::step(FieldState& s, double dt) {
    nonlinear_substep(s, 0.5 * dt);
    linear_step(s, dt);
    nonlinear_substep(s, 0.5 * dt);
}

namespace {

TraceSample sample_traces(const HalfLineGrid& grid, const FieldState& s) {
    TraceSample ts;
    ts.traces = extract_traces(grid, s);
    ts.w_u1 = weighted_norm_sq(grid, std::span<const cplx>(s.u), 1);
    ts.w_v1 = weighted_norm_sq(grid, std::span<const double>(s.v), 1);
    return ts;
}

}  // namespace

RunResult run(const SimConfig& cfg) {
    validate_config(cfg);
    RunResult res;
    res.tag = cfg.tag;
    res.grid = build_grid(cfg.direction, cfg.length, cfg.cells);
    res.params = make_coupling(cfg.coupling.alpha, cfg.coupling.beta, cfg.coupling.gamma);
    const HalfLineGrid& grid = res.grid;
    FieldState s = init_state(grid, cfg.u0, cfg.v0, &cfg.signals);
    const double band0 = outer_band_sup(grid, s);
    if (band0 > 1e-10) {
        std::ostringstream os;
        os << "initial data are not negligible on the outer 10% of the grid (sup " << band0
           << " > 1e-10); increase the domain length";
        throw ConfigError(os.str());
    }
    res.initial = s;
    res.outer_band_peak = band0;

    auto snapshot = [&](const FieldState& st) {
        Snapshot sn;
        sn.t = st.t;
        sn.history_index = res.series.history.size() - 1;
        sn.f = compute_functionals(grid, st, res.params);
        res.series.snapshots.push_back(sn);
        const double band = outer_band_sup(grid, st);
        if (band > 1e-6 && res.outer_band_peak <= 1e-6) {
            std::ostringstream os;
            os << "radiation reached the artificial boundary: outer-band sup " << band << " at t = " << st.t;
            res.warnings.push_back(os.str());
        }
        res.outer_band_peak = std::max(res.outer_band_peak, band);
    };

    res.series.history.push_back(sample_traces(grid, s));
    snapshot(s);

    if (cfg.t_final > 0.0) {
        CoupledStepper stepper(grid, res.params, cfg.signals, cfg.forcing);
        const long steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
        FieldState last = s;
        for (long n = 1; n <= steps; ++n) {
            const double dt = n == steps ? cfg.t_final - (steps - 1) * cfg.dt : cfg.dt;
            last = s;
            try {
                stepper.step(s, dt);
            } catch (const NumericalHalt& e) {
                res.status = RunStatus::Halted;
                res.halt_time = last.t;
                res.halt_reason = e.what();
                s = last;
                break;
            }
            if (n == steps) s.t = cfg.t_final;
            res.series.history.push_back(sample_traces(grid, s));
            if (n % cfg.stride == 0 || n == steps) snapshot(s);
        }
        if (res.status == RunStatus::Halted && res.series.snapshots.back().history_index + 1 != res.series.history.size())
            snapshot(s);
    }
    res.final_state = s;
    if (res.series.history.size() != 2)
        res.residuals = law_residuals(res.series, res.params, grid.direction);
    else {
        TimeSeries bare = res.series;
        bare.history.resize(1);
        res.residuals = law_residuals(bare, res.params, grid.direction);
        res.warnings.push_back("series too short for law residuals");
    }
    return res;
}

}  // namespace skdv
