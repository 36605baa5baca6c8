#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace skdv {

using cplx = std::complex<double>;

enum class Direction { Right, Left };

const char* direction_name(Direction d);
Direction parse_direction(const std::string& s);

// Uniform grid on [0, L] (Right) or [-L, 0] (Left). Node 0 is always x = 0 and
// node indices increase away from the boundary in both directions.
struct HalfLineGrid {
    Direction direction = Direction::Right;
    double length = 0.0;
    int cells = 0;
    double h = 0.0;

    int nodes() const { return cells + 1; }
    double sigma() const { return direction == Direction::Right ? 1.0 : -1.0; }
    double x(int j) const;
    double dist(int j) const { return j == cells ? length : j * h; }
};

HalfLineGrid build_grid(Direction direction, double length, int cells);

enum class CouplingSign { Positive, Negative };

struct CouplingParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;

    double ratio() const { return alpha / gamma; }
    CouplingSign sign_product() const {
        return alpha * gamma > 0.0 ? CouplingSign::Positive : CouplingSign::Negative;
    }
};

CouplingParams make_coupling(double alpha, double beta, double gamma);

struct FieldState {
    double t = 0.0;
    std::vector<cplx> u;
    std::vector<double> v;
};

bool all_finite(const FieldState& s);

// Initial-data catalog. Gaussian: A e^{ikx} e^{-(x-c)^2/w^2}; Sech: A e^{ikx} sech((x-c)/w).
// Table: samples (x, re, im) interpolated linearly; im is zero for two-column files.
// Custom: an arbitrary function, available programmatically only.
struct FieldSpec {
    enum class Kind { Zero, Gaussian, Sech, Table, Custom };
    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
    double wavenumber = 0.0;
    std::vector<double> table_x;
    std::vector<cplx> table_value;
    std::function<cplx(double)> custom;

    cplx operator()(double x) const;
};

FieldSpec::Kind parse_field_kind(const std::string& s);
const char* field_kind_name(FieldSpec::Kind k);
FieldSpec load_field_table(const std::string& path);

// Boundary-signal catalog: zero, a (t^2 e^{-rate t}) family, or a sampled table.
struct SignalSpec {
    enum class Kind { Zero, T2Exp, Table, Custom };
    Kind kind = Kind::Zero;
    cplx amplitude = 1.0;
    double rate = 1.0;
    std::vector<double> table_t;
    std::vector<cplx> table_value;
    std::function<cplx(double)> custom;

    cplx operator()(double t) const;
    bool is_zero() const { return kind == Kind::Zero; }
};

SignalSpec::Kind parse_signal_kind(const std::string& s);
const char* signal_kind_name(SignalSpec::Kind k);
SignalSpec load_signal_table(const std::string& path);

struct BoundarySignals {
    SignalSpec f;
    SignalSpec g;
    SignalSpec h;

    bool homogeneous() const { return f.is_zero() && g.is_zero() && h.is_zero(); }
};

// Samples the specs on the grid. With signals attached the boundary node is
// overwritten by f(0), g(0) after checking compatibility with the sampled data.
FieldState init_state(const HalfLineGrid& grid, const FieldSpec& u0, const FieldSpec& v0,
                      const BoundarySignals* signals = nullptr);

// Composite trapezoid of |x|^p |field|^2.
double weighted_norm_sq(const HalfLineGrid& grid, std::span<const cplx> field, int p);
double weighted_norm_sq(const HalfLineGrid& grid, std::span<const double> field, int p);

// Largest |u| or |v| over the outer 10% of the nodes.
double outer_band_sup(const HalfLineGrid& grid, const FieldState& s);

}  // namespace skdv
