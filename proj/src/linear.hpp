#pragma once

#include <span>
#include <vector>

#include "banded.hpp"
#include "grid.hpp"

namespace skdv {

// Crank-Nicolson for i u_t + u_xx = F on a half-line grid with u(0) prescribed
// and u = 0 at the far end. `forcing`, when given, is the time average of F over
// the step at every node.
class SchrodingerSolver {
public:
    explicit SchrodingerSolver(const HalfLineGrid& grid);

    void step(std::span<cplx> u, double dt, cplx boundary_new,
              std::span<const cplx> forcing = {});

private:
    void assemble(double dt);

    HalfLineGrid grid_;
    double cached_dt_ = 0.0;
    BandedSystem<cplx> system_;
    std::vector<cplx> rhs_;
};

struct KdvBoundary {
    double g = 0.0;  // v(0, t)
    double h = 0.0;  // v_x(0, t), Left only
};

// Crank-Nicolson for v_t + v_xxx = q. Right: v(0) = g, v = v_x = 0 at x = L.
// Left: v(0) = g, v_x(0) = h, v = 0 at x = -L.
class AirySolver {
public:
    explicit AirySolver(const HalfLineGrid& grid);

    void step(std::span<double> v, double dt, KdvBoundary bc_new,
              std::span<const double> forcing = {});

    // Number of conditions imposed at x = 0.
    int boundary_conditions_at_origin() const {
        return grid_.direction == Direction::Right ? 1 : 2;
    }

    // Discrete v_xxx at node j as used by the scheme (interior rows only).
    double third_derivative(std::span<const double> v, int j) const;

private:
    struct Row {
        int first = 0;
        std::vector<double> w;
    };
    void assemble(double dt);
    bool is_pde_row(int j) const;

    HalfLineGrid grid_;
    std::vector<Row> d3_;  // stencils of v_xxx, indexed by row
    double cached_dt_ = 0.0;
    BandedSystem<double> system_;
    std::vector<double> rhs_;
};

// Uniform samples on the whole line: x_k = x0 + k h, k = 0..n-1.
template <class T>
struct LineSamples {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<T> values;
};

// Whole-line free evolution by exact symbol multiplication on a zero-padded
// periodic extension. Throws RangeError when the data are not negligible at the
// ends of the sampled segment.
LineSamples<cplx> free_schrodinger(const LineSamples<cplx>& u0, double t, int padding = 4);
LineSamples<double> free_airy(const LineSamples<double>& v0, double t, int padding = 4);

// Same, for data sampled on a half-line grid (zero on the other half-line).
std::vector<cplx> free_schrodinger_reference(const HalfLineGrid& grid, std::span<const cplx> u0,
                                             double t);
std::vector<double> free_airy_reference(const HalfLineGrid& grid, std::span<const double> v0,
                                        double t);

}  // namespace skdv
