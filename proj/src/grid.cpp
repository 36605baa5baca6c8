#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace skdv {

namespace {

struct Table {
    std::vector<double> x;
    std::vector<cplx> value;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table file '" + path + "'");
    Table t;
    std::string line;
    int columns = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> cols;
        double d;
        while (ls >> d) cols.push_back(d);
        if (!ls.eof()) throw ConfigError("non-numeric entry in table file '" + path + "'");
        if (cols.empty()) continue;
        if (columns < 0) columns = static_cast<int>(cols.size());
        if (static_cast<int>(cols.size()) != columns || (columns != 2 && columns != 3))
            throw ConfigError("table file '" + path + "' must have 2 or 3 columns on every row");
        t.x.push_back(cols[0]);
        t.value.emplace_back(cols[1], columns == 3 ? cols[2] : 0.0);
    }
    if (t.x.size() < 2) throw ConfigError("table file '" + path + "' needs at least two rows");
    for (std::size_t i = 1; i < t.x.size(); ++i)
        if (!(t.x[i] > t.x[i - 1]))
            throw ConfigError("table file '" + path + "' abscissae are not increasing");
    return t;
}

cplx interpolate(const std::vector<double>& xs, const std::vector<cplx>& ys, double x,
                 const char* what) {
    if (xs.empty()) throw ConfigError(std::string(what) + " table is empty");
    const double tol = 1e-12 * std::max(1.0, std::abs(xs.back() - xs.front()));
    if (x < xs.front() - tol || x > xs.back() + tol) {
        std::ostringstream os;
        os << what << " table does not cover " << x << " (range [" << xs.front() << ", "
           << xs.back() << "])";
        throw ConfigError(os.str());
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i >= xs.size() - 1) i = xs.size() - 2;
    double s = std::clamp((x - xs[i]) / (xs[i + 1] - xs[i]), 0.0, 1.0);
    return ys[i] * (1.0 - s) + ys[i + 1] * s;
}

template <class T>
double trapezoid_weighted(const HalfLineGrid& grid, std::span<const T> field, int p) {
    if (p < 0 || p > 2) throw ConfigError("weight power must be 0, 1 or 2");
    if (static_cast<int>(field.size()) != grid.nodes())
        throw ConfigError("field size does not match grid");
    double sum = 0.0;
    for (int j = 0; j < grid.nodes(); ++j) {
        double w = (j == 0 || j == grid.cells) ? 0.5 : 1.0;
        double r = grid.dist(j);
        double weight = p == 0 ? 1.0 : (p == 1 ? r : r * r);
        sum += w * weight * std::norm(field[j]);
    }
    return sum * grid.h;
}

}  // namespace

const char* direction_name(Direction d) { return d == Direction::Right ? "right" : "left"; }

Direction parse_direction(const std::string& s) {
    if (s == "right") return Direction::Right;
    if (s == "left") return Direction::Left;
    throw ConfigError("direction must be 'right' or 'left', got '" + s + "'");
}

double HalfLineGrid::x(int j) const { return sigma() * dist(j); }

HalfLineGrid build_grid(Direction direction, double length, int cells) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("grid length must be positive and finite");
    if (cells < 16) throw ConfigError("grid needs at least 16 cells");
    HalfLineGrid g;
    g.direction = direction;
    g.length = length;
    g.cells = cells;
    g.h = length / cells;
    return g;
}

CouplingParams make_coupling(double alpha, double beta, double gamma) {
    if (gamma == 0.0) throw ConfigError("gamma must be nonzero");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw ConfigError("coupling constants must be finite");
    return CouplingParams{alpha, beta, gamma};
}

bool all_finite(const FieldState& s) {
    if (!std::isfinite(s.t)) return false;
    for (const auto& z : s.u)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    for (double y : s.v)
        if (!std::isfinite(y)) return false;
    return true;
}

cplx FieldSpec::operator()(double x) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Gaussian: {
            double r = (x - center) / width;
            return amplitude * std::exp(-r * r) * std::polar(1.0, wavenumber * x);
        }
        case Kind::Sech: {
            double r = (x - center) / width;
            return amplitude / std::cosh(r) * std::polar(1.0, wavenumber * x);
        }
        case Kind::Table:
            return interpolate(table_x, table_value, x, "initial-data");
        case Kind::Custom:
            return custom ? custom(x) : cplx(0.0);
    }
    return 0.0;
}

FieldSpec::Kind parse_field_kind(const std::string& s) {
    if (s == "zero") return FieldSpec::Kind::Zero;
    if (s == "gaussian") return FieldSpec::Kind::Gaussian;
    if (s == "sech") return FieldSpec::Kind::Sech;
    if (s == "table") return FieldSpec::Kind::Table;
    throw ConfigError("unknown initial-data kind '" + s + "'");
}

const char* field_kind_name(FieldSpec::Kind k) {
    switch (k) {
        case FieldSpec::Kind::Zero: return "zero";
        case FieldSpec::Kind::Gaussian: return "gaussian";
        case FieldSpec::Kind::Sech: return "sech";
        case FieldSpec::Kind::Table: return "table";
        case FieldSpec::Kind::Custom: return "custom";
    }
    return "?";
}

FieldSpec load_field_table(const std::string& path) {
    Table t = read_table(path);
    FieldSpec s;
    s.kind = FieldSpec::Kind::Table;
    s.table_x = std::move(t.x);
    s.table_value = std::move(t.value);
    return s;
}

cplx SignalSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::T2Exp:
            return t <= 0.0 ? cplx(0.0) : amplitude * t * t * std::exp(-rate * t);
        case Kind::Table:
            return interpolate(table_t, table_value, t, "boundary-signal");
        case Kind::Custom:
            return custom ? custom(t) : cplx(0.0);
    }
    return 0.0;
}

SignalSpec::Kind parse_signal_kind(const std::string& s) {
    if (s == "zero") return SignalSpec::Kind::Zero;
    if (s == "t2exp") return SignalSpec::Kind::T2Exp;
    if (s == "table") return SignalSpec::Kind::Table;
    throw ConfigError("unknown boundary-signal kind '" + s + "'");
}

const char* signal_kind_name(SignalSpec::Kind k) {
    switch (k) {
        case SignalSpec::Kind::Zero: return "zero";
        case SignalSpec::Kind::T2Exp: return "t2exp";
        case SignalSpec::Kind::Table: return "table";
        case SignalSpec::Kind::Custom: return "custom";
    }
    return "?";
}

SignalSpec load_signal_table(const std::string& path) {
    Table t = read_table(path);
    SignalSpec s;
    s.kind = SignalSpec::Kind::Table;
    s.table_t = std::move(t.x);
    s.table_value = std::move(t.value);
    return s;
}

FieldState init_state(const HalfLineGrid& grid, const FieldSpec& u0, const FieldSpec& v0,
                      const BoundarySignals* signals) {
    FieldState s;
    s.t = 0.0;
    s.u.resize(grid.nodes());
    s.v.resize(grid.nodes());
    for (int j = 0; j < grid.nodes(); ++j) {
        double x = grid.x(j);
        s.u[j] = u0(x);
        s.v[j] = v0(x).real();
    }
    if (!all_finite(s)) throw ConfigError("initial data has non-finite samples");
    if (signals) {
        const double tol = 1e-8;
        cplx f0 = signals->f(0.0);
        double g0 = signals->g(0.0).real();
        if (std::abs(f0 - s.u[0]) > tol)
            throw ConfigError("incompatible data: f(0) differs from u0(0)");
        if (std::abs(g0 - s.v[0]) > tol)
            throw ConfigError("incompatible data: g(0) differs from v0(0)");
        s.u[0] = f0;
        s.v[0] = g0;
    }
    return s;
}

double weighted_norm_sq(const HalfLineGrid& grid, std::span<const cplx> field, int p) {
    return trapezoid_weighted(grid, field, p);
}

double weighted_norm_sq(const HalfLineGrid& grid, std::span<const double> field, int p) {
    return trapezoid_weighted(grid, field, p);
}

double outer_band_sup(const HalfLineGrid& grid, const FieldState& s) {
    int start = grid.cells - grid.cells / 10;
    double m = 0.0;
    for (int j = start; j < grid.nodes(); ++j) {
        m = std::max(m, std::abs(s.u[j]));
        m = std::max(m, std::abs(s.v[j]));
    }
    return m;
}

}  // namespace skdv
