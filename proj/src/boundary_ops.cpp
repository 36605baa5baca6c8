#include "boundary_ops.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "airy.hpp"
#include "banded.hpp"
#include "errors.hpp"
#include "linear.hpp"

namespace skdv {

namespace {

constexpr int kDegree = 15;
constexpr int kNodes = 16;

struct GaussRule {
    std::array<double, kNodes> s{};
    std::array<double, kNodes> w{};
    std::array<std::array<double, kDegree + 1>, kNodes> p{};  // P_k(s_i)
};

const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        GaussRule r;
        using G = boost::math::quadrature::gauss<double, kNodes>;
        const auto& a = G::abscissa();
        const auto& wt = G::weights();
        for (int i = 0; i < kNodes / 2; ++i) {
            r.s[i] = -a[kNodes / 2 - 1 - i];
            r.w[i] = wt[kNodes / 2 - 1 - i];
            r.s[kNodes - 1 - i] = a[kNodes / 2 - 1 - i];
            r.w[kNodes - 1 - i] = wt[kNodes / 2 - 1 - i];
        }
        for (int i = 0; i < kNodes; ++i) {
            double p0 = 1.0, p1 = r.s[i];
            r.p[i][0] = p0;
            r.p[i][1] = p1;
            for (int k = 2; k <= kDegree; ++k) {
                double pk = ((2.0 * k - 1.0) * r.s[i] * p1 - (k - 1.0) * p0) / k;
                r.p[i][k] = pk;
                p0 = p1;
                p1 = pk;
            }
        }
        return r;
    }();
    return rule;
}

// int_{-1}^{1} P_k(s) e^{-i w s} ds = 2 (-i)^k j_k(w)
std::array<cplx, kDegree + 1> legendre_moments(double omega) {
    std::array<cplx, kDegree + 1> m{};
    const double a = std::abs(omega);
    static const cplx mi_pow[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
    std::array<double, kDegree + 1> j{};
    if (a > kDegree + 1.0) {
        // upward recurrence is stable once the argument exceeds the order
        j[0] = std::sin(a) / a;
        j[1] = std::sin(a) / (a * a) - std::cos(a) / a;
        for (int k = 1; k < kDegree; ++k) j[k + 1] = (2.0 * k + 1.0) / a * j[k] - j[k - 1];
    } else {
        for (int k = 0; k <= kDegree; ++k) j[k] = boost::math::sph_bessel(k, a);
    }
    for (int k = 0; k <= kDegree; ++k) {
        double jk = (omega < 0 && (k % 2)) ? -j[k] : j[k];
        m[k] = 2.0 * mi_pow[k % 4] * jk;
    }
    return m;
}

double fd_derivative_order4(const std::function<double(double)>& f, double x, double d, int order) {
    // centered 4th-order stencils for first, second and third derivatives
    std::vector<double> nodes;
    int half = order <= 2 ? 2 : 3;
    for (int k = -half; k <= half; ++k) nodes.push_back(k);
    auto w = fd_weights(0.0, nodes, order);
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) s += w[k] * f(x + nodes[k] * d);
    return s / std::pow(d, order);
}

}  // namespace

BoundaryProfile zero_profile() {
    BoundaryProfile p;
    p.name = "zero";
    p.signal = [](double) { return cplx(0.0); };
    p.support_end = 0.0;
    p.vanishing_derivatives = std::numeric_limits<int>::max();
    p.zero = true;
    return p;
}

BoundaryProfile t2exp_profile(cplx amplitude, double rate) {
    if (!(rate > 0.0)) throw ConfigError("t2exp rate must be positive");
    BoundaryProfile p;
    std::ostringstream os;
    os << "t2exp(amplitude=" << amplitude.real();
    if (amplitude.imag() != 0.0) os << (amplitude.imag() > 0 ? "+" : "") << amplitude.imag() << "i";
    os << ", rate=" << rate << ")";
    p.name = os.str();
    p.signal = [amplitude, rate](double t) {
        return t <= 0.0 ? cplx(0.0) : amplitude * t * t * std::exp(-rate * t);
    };
    // t^2 e^{-r t} < 1e-17 beyond this point
    double t = 2.0 / rate;
    while (t * t * std::exp(-rate * t) > 1e-17) t *= 1.1;
    p.support_end = t;
    p.vanishing_derivatives = 2;
    p.zero = amplitude == cplx(0.0);
    return p;
}

BoundaryProfile scaled_sum(const BoundaryProfile& f1, cplx a, const BoundaryProfile& f2, cplx b) {
    BoundaryProfile p;
    p.name = "combination";
    auto s1 = f1.signal, s2 = f2.signal;
    p.signal = [s1, s2, a, b](double t) { return a * s1(t) + b * s2(t); };
    p.support_end = std::max(f1.support_end, f2.support_end);
    p.vanishing_derivatives = std::min(f1.vanishing_derivatives, f2.vanishing_derivatives);
    p.zero = (f1.zero || a == cplx(0.0)) && (f2.zero || b == cplx(0.0));
    return p;
}

LaplaceBoundaryOperator::LaplaceBoundaryOperator(BoundaryProfile f, LaplaceOptions opt)
    : f_(std::move(f)), opt_(opt) {
    if (f_.zero) return;
    if (std::abs(f_.signal(0.0)) > 1e-12)
        throw ConfigError("boundary profile must vanish at t = 0");
    if (!(f_.support_end > 0.0)) throw ConfigError("boundary profile needs a positive support");
    const auto& rule = gauss_rule();
    auto build = [&](int panels) {
        std::vector<std::vector<cplx>> c(panels, std::vector<cplx>(kDegree + 1, 0.0));
        const double width = f_.support_end / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = (p + 0.5) * width;
            for (int i = 0; i < kNodes; ++i) {
                cplx fv = f_.signal(mid + 0.5 * width * rule.s[i]);
                for (int k = 0; k <= kDegree; ++k) c[p][k] += rule.w[i] * fv * rule.p[i][k];
            }
            for (int k = 0; k <= kDegree; ++k) c[p][k] *= 0.5 * (2.0 * k + 1.0);
        }
        return c;
    };
    const double probes[] = {0.0, -3.7, 41.0, -400.0, 2500.0};
    int panels = 16;
    legendre_coeffs_ = build(panels);
    panels_ = panels;
    panel_width_ = f_.support_end / panels;
    for (;;) {
        std::vector<cplx> coarse;
        for (double tau : probes) coarse.push_back(transform(tau));
        auto fine = build(2 * panels);
        legendre_coeffs_ = fine;
        panels_ = 2 * panels;
        panel_width_ = f_.support_end / panels_;
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            diff = std::max(diff, std::abs(coarse[i] - transform(probes[i])));
            scale = std::max(scale, std::abs(coarse[i]));
        }
        panels *= 2;
        if (diff <= 1e-13 * std::max(scale, 1e-3)) break;
        if (panels > (1 << 16))
            throw ConvergenceError("transform of the boundary profile did not converge");
    }
}

cplx LaplaceBoundaryOperator::transform(double tau) const {
    if (f_.zero) return 0.0;
    const auto m = legendre_moments(0.5 * tau * panel_width_);
    const cplx step = std::polar(1.0, -tau * panel_width_);
    cplx phase = std::polar(1.0, -0.5 * tau * panel_width_);
    cplx sum = 0.0;
    for (int p = 0; p < panels_; ++p) {
        cplx inner = 0.0;
        for (int k = 0; k <= kDegree; ++k) inner += legendre_coeffs_[p][k] * m[k];
        sum += phase * inner;
        phase *= step;
        if ((p & 63) == 63) phase /= std::abs(phase);
    }
    return 0.5 * panel_width_ * sum;
}

void LaplaceBoundaryOperator::ensure_level(std::size_t k) const {
    while (levels_.size() <= k) {
        const std::size_t idx = levels_.size();
        const double lo = idx == 0 ? 0.0 : opt_.z_start * std::pow(2.0, idx - 1);
        const double hi = opt_.z_start * std::pow(2.0, idx);
        Level lev;
        const auto& rule = gauss_rule();
        double a = lo;
        while (a < hi) {
            double width = std::min(0.5, 6.0 / (2.0 * a * opt_.t_max + opt_.x_max + 1.0));
            double b = std::min(hi, a + width);
            for (int i = 0; i < kNodes; ++i) {
                lev.z.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.s[i]);
                lev.w.push_back(0.5 * (b - a) * rule.w[i]);
            }
            a = b;
        }
        for (double z : lev.z) {
            lev.q_plus.push_back(transform(z * z));
            lev.q_minus.push_back(transform(-z * z));
        }
        levels_.push_back(std::move(lev));
    }
}

template <class Kernel>
cplx LaplaceBoundaryOperator::integrate(Kernel kernel) const {
    cplx total = 0.0;
    for (std::size_t k = 0;; ++k) {
        const double hi = opt_.z_start * std::pow(2.0, k);
        if (hi > opt_.z_cap * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "z-integral tail above " << opt_.tail_tol << " at the truncation cap " << opt_.z_cap
               << "; the boundary profile is not smooth enough";
            throw ConvergenceError(os.str());
        }
        ensure_level(k);
        const Level& lev = levels_[k];
        cplx part = 0.0;
        for (std::size_t i = 0; i < lev.z.size(); ++i)
            part += lev.w[i] * kernel(lev.z[i], lev.q_plus[i], lev.q_minus[i]);
        total += part;
        if (k > 0 && std::abs(part) <= opt_.tail_tol) {
            last_z_ = hi;
            return total;
        }
    }
}

cplx LaplaceBoundaryOperator::operator()(double x, double t) const {
    if (f_.zero || t <= 0.0) return 0.0;
    if (x < 0.0) throw RangeError("Laplace operator is defined for x >= 0");
    if (t > opt_.t_max * (1.0 + 1e-12) || x > opt_.x_max * (1.0 + 1e-12))
        throw RangeError("(x, t) outside the range the z-quadrature was built for");
    const cplx i(0.0, 1.0);
    auto kernel = [&](double z, cplx qp, cplx qm) {
        const double z2t = z * z * t;
        return z * (std::exp(i * (z * x - z2t)) * qm + std::exp(i * z2t - z * x) * qp);
    };
    return integrate(kernel) / std::numbers::pi;
}

cplx LaplaceBoundaryOperator::literal_branch_variant(double x, double t) const {
    if (f_.zero || t <= 0.0) return 0.0;
    const cplx i(0.0, 1.0);
    auto kernel = [&](double z, cplx qp, cplx qm) {
        const double z2t = z * z * t;
        return z * (std::exp(i * (z * x - z2t)) * qm + std::exp(i * (z2t - z * x)) * qp);
    };
    return integrate(kernel) / std::numbers::pi;
}

AiryBoundaryPotential::AiryBoundaryPotential(BoundaryProfile g, AiryPotentialOptions opt)
    : g_(std::move(g)), opt_(opt) {
    if (!g_.zero && std::abs(g_.signal(0.0)) > 1e-12)
        throw ConfigError("boundary profile must vanish at t = 0");
}

double AiryBoundaryPotential::operator()(double x, double t) const {
    if (x < opt_.x_min) {
        std::ostringstream os;
        os << "Airy boundary potential needs x >= " << opt_.x_min << ", got " << x;
        throw RangeError(os.str());
    }
    if (g_.zero || t <= 0.0) return 0.0;
    const double upper = 40.0;  // A(w) < 1e-40 beyond
    const double a = x / std::cbrt(t);
    if (a >= upper) return 0.0;
    auto integrand = [&](double w) {
        const double r = x / w;
        const double s = std::max(t - r * r * r, 0.0);
        return airy_kernel(w) * g_.signal(s).real();
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double total = 0.0, err_total = 0.0;
    double lo = a;
    while (lo < upper) {
        double hi = std::min(upper, std::max(2.0 * lo, lo + 0.05));
        double err = 0.0;
        total += GK::integrate(integrand, lo, hi, 15, 1e-13, &err);
        err_total += err;
        lo = hi;
    }
    if (3.0 * err_total > opt_.tol) throw ConvergenceError("Airy boundary potential quadrature did not converge");
    return 3.0 * total;
}

OperatorCheck check_laplace_operator(const BoundaryProfile& f, double t) {
    OperatorCheck c;
    c.op = "L";
    c.profile = f.name;
    LaplaceOptions opt;
    opt.t_max = t + 0.1;
    opt.x_max = 2.0;
    LaplaceBoundaryOperator op(f, opt);
    const double d = 0.01;
    cplx trace = extrapolate_to_origin(op(d, t), op(2 * d, t), op(4 * d, t));
    cplx expected = f.signal(t);
    c.trace_value = std::abs(trace);
    c.trace_error = std::abs(trace - expected);
    c.normalization_constant = std::abs(expected) > 0.0 ? std::abs(trace) / std::abs(expected) : 1.0;
    auto residual = [&](auto&& eval) {
        const double dd = 0.01;
        std::function<double(double)> re_t = [&](double s) { return eval(1.0, s).real(); };
        std::function<double(double)> im_t = [&](double s) { return eval(1.0, s).imag(); };
        std::function<double(double)> re_x = [&](double y) { return eval(y, t).real(); };
        std::function<double(double)> im_x = [&](double y) { return eval(y, t).imag(); };
        cplx ut(fd_derivative_order4(re_t, t, dd, 1), fd_derivative_order4(im_t, t, dd, 1));
        cplx uxx(fd_derivative_order4(re_x, 1.0, dd, 2), fd_derivative_order4(im_x, 1.0, dd, 2));
        return std::abs(cplx(0.0, 1.0) * ut + uxx);
    };
    c.pde_residual = residual([&](double x, double s) { return op(x, s); });
    c.extra_residual = residual([&](double x, double s) { return op.literal_branch_variant(x, s); });
    return c;
}

OperatorCheck check_airy_potential(const BoundaryProfile& g, double t) {
    OperatorCheck c;
    c.op = "V";
    c.profile = g.name;
    AiryBoundaryPotential op(g);
    const double d = 0.01;
    double trace = extrapolate_to_origin(op(d, t), op(2 * d, t), op(4 * d, t));
    double expected = g.signal(t).real();
    c.trace_value = std::abs(trace);
    c.trace_error = std::abs(trace - expected);
    c.normalization_constant = expected != 0.0 ? trace / expected : 1.0;
    std::function<double(double)> in_t = [&](double s) { return op(1.0, s); };
    std::function<double(double)> in_x = [&](double y) { return op(y, t); };
    c.pde_residual = std::abs(fd_derivative_order4(in_t, t, 0.01, 1) +
                              fd_derivative_order4(in_x, 1.0, 0.02, 3));
    return c;
}

double fitted_order(const std::vector<double>& errors, const std::vector<double>& steps) {
    const std::size_t n = errors.size();
    if (n < 2 || steps.size() != n) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(errors[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        double lx = std::log(steps[i]), ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CrossValidation cross_validate_linear(const std::string& equation, Direction direction,
                                      const BoundaryProfile& signal, double t_final,
                                      const std::vector<Resolution>& resolutions, double length) {
    if (equation != "schrodinger" && equation != "kdv")
        throw ConfigError("cross validation equation must be 'schrodinger' or 'kdv'");
    if (equation == "kdv" && direction == Direction::Left)
        throw ConfigError("no quadrature operator for the two-condition KdV problem on the left half-line");
    if (resolutions.empty()) throw ConfigError("cross validation needs at least one resolution");
    CrossValidation cv;
    cv.equation = equation;
    cv.direction = direction;
    cv.resolutions = resolutions;
    const std::vector<double> xs = equation == "schrodinger" ? std::vector<double>{0.5, 1.0, 2.0, 3.0}
                                                             : std::vector<double>{0.5, 1.0, 2.0};
    const std::vector<double> ts{0.5 * t_final, t_final};

    std::vector<std::vector<cplx>> reference(ts.size(), std::vector<cplx>(xs.size(), 0.0));
    if (!signal.zero) {
        if (equation == "schrodinger") {
            LaplaceOptions opt;
            opt.t_max = t_final;
            opt.x_max = xs.back();
            LaplaceBoundaryOperator op(signal, opt);
            for (std::size_t a = 0; a < ts.size(); ++a)
                for (std::size_t b = 0; b < xs.size(); ++b) reference[a][b] = op(xs[b], ts[a]);
        } else {
            AiryBoundaryPotential op(signal);
            for (std::size_t a = 0; a < ts.size(); ++a)
                for (std::size_t b = 0; b < xs.size(); ++b) reference[a][b] = op(xs[b], ts[a]);
        }
    }

    std::vector<double> hs;
    for (const auto& res : resolutions) {
        auto grid = build_grid(direction, length, res.cells);
        hs.push_back(grid.h);
        auto index_of = [&](double x) {
            double r = x / grid.h;
            int j = static_cast<int>(std::lround(r));
            if (std::abs(r - j) > 1e-9) throw ConfigError("sample point is not a grid node");
            return j;
        };
        auto step_of = [&](double t) {
            double r = t / res.dt;
            long n = std::lround(r);
            if (std::abs(r - n) > 1e-9) throw ConfigError("sample time is not a step boundary");
            return n;
        };
        double worst = 0.0;
        long n = 0;
        if (equation == "schrodinger") {
            SchrodingerSolver solver(grid);
            std::vector<cplx> u(grid.nodes(), 0.0);
            for (std::size_t a = 0; a < ts.size(); ++a) {
                for (long target = step_of(ts[a]); n < target; ++n)
                    solver.step(u, res.dt, signal.signal((n + 1) * res.dt));
                for (std::size_t b = 0; b < xs.size(); ++b)
                    worst = std::max(worst, std::abs(u[index_of(xs[b])] - reference[a][b]));
            }
        } else {
            AirySolver solver(grid);
            std::vector<double> v(grid.nodes(), 0.0);
            for (std::size_t a = 0; a < ts.size(); ++a) {
                for (long target = step_of(ts[a]); n < target; ++n)
                    solver.step(v, res.dt, {signal.signal((n + 1) * res.dt).real(), 0.0});
                for (std::size_t b = 0; b < xs.size(); ++b)
                    worst = std::max(worst, std::abs(v[index_of(xs[b])] - reference[a][b].real()));
            }
        }
        cv.discrepancies.push_back(worst);
    }
    cv.order = fitted_order(cv.discrepancies, hs);
    return cv;
}

}  // namespace skdv
