#pragma once

#include <functional>
#include <span>
#include <vector>

#include "grid.hpp"

namespace skdv {

// One-sided traces at x = 0. Time derivatives are filled from a trace history.
struct BoundaryTraces {
    double t = 0.0;
    cplx u0, ux0;
    double v0 = 0.0, vx0 = 0.0, vxx0 = 0.0;
    cplx ut0;
    double vt0 = 0.0, vxt0 = 0.0;
};

BoundaryTraces extract_traces(const HalfLineGrid& grid, const FieldState& s);

// Centered differences in time over a uniformly or non-uniformly spaced
// history; second-order one-sided stencils at the ends.
void fill_time_derivatives(std::vector<BoundaryTraces>& history);

// Physical x-derivative: centered in the interior, second-order one-sided at both ends.
std::vector<cplx> derivative_x(const HalfLineGrid& grid, std::span<const cplx> f);
std::vector<double> derivative_x(const HalfLineGrid& grid, std::span<const double> f);

double mass(const HalfLineGrid& grid, const FieldState& s);
double moment_Q(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p);
double energy_E(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p);
double p_functional(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p);

// Every spatial integral needed per record, from one pass over the state.
struct Functionals {
    double M = 0, Q = 0, E = 0;
    double w_u1 = 0, w_v1 = 0, w_u2 = 0;
    double v_sq = 0;        // int v^2
    double im_u_ux = 0;     // Im int u conj(u_x)
    double eta_d2_rhs = 0;  // second-derivative identity, meaningful on the left half-line
    double P = 0;
};

Functionals compute_functionals(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p);

struct Fluxes {
    double mass = 0;  // 2 Im(u_x conj(u)) at x = 0
    double Qu = 0, Qv = 0, E1 = 0, E2 = 0;
};

Fluxes fluxes(const BoundaryTraces& tr, const CouplingParams& p);

struct VirialInitial {
    double eta0 = 0;
    double eta0_d1 = 0;
};

// Left direction only.
VirialInitial initial_virial_data(const HalfLineGrid& grid, const FieldState& s, const CouplingParams& p);

struct TraceSample {
    BoundaryTraces traces;
    double w_u1 = 0, w_v1 = 0;
};

struct Snapshot {
    double t = 0;
    std::size_t history_index = 0;
    Functionals f;
};

// Per-step trace history and per-stride functional snapshots of a run.
struct TimeSeries {
    std::vector<TraceSample> history;
    std::vector<Snapshot> snapshots;
};

struct FunctionalRecord {
    double t = 0;
    double M = 0, Q = 0, E = 0;
    double Qu = 0, Qv = 0, E1 = 0, E2 = 0;
    double w_u1 = 0, w_v1 = 0, w_u2 = 0;
    double eta = 0, eta_d1 = 0, eta_d2_fd = 0, eta_d2_rhs = 0;
    double P = 0;
    double r_mass = 0, r_moment = 0, r_energy = 0;
    double r_first_moment_rate = 0, r_virial = 0;
    double int_mass_flux = 0, int_moment_flux = 0, int_energy_flux = 0;
};

struct LawResiduals {
    double r_mass = 0, r_moment = 0, r_energy = 0;
    double r_first_moment_rate = 0;
    double r_virial = 0;      // at the snapshot nearest mid-run
    double r_virial_max = 0;  // over interior snapshots
    double int_mass_flux = 0, int_moment_flux = 0, int_energy_flux = 0;
    std::vector<FunctionalRecord> records;
};

using FluxFunction = std::function<Fluxes(const BoundaryTraces&, const CouplingParams&)>;

// Residuals of the mass, moment and energy laws (boundary-flux signs per
// direction), the first-moment rate law, and on the left half-line the virial
// identity. Needs at least three history samples unless the series has a
// single sample, which yields zero residuals.
LawResiduals law_residuals(const TimeSeries& series, const CouplingParams& p, Direction direction,
                           const FluxFunction& flux = fluxes);

}  // namespace skdv
