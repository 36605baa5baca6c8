#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace skdv {

struct BoundaryProfile {
    std::string name;
    std::function<cplx(double)> signal;
    double support_end = 0.0;      // signal is negligible beyond this time
    int vanishing_derivatives = 0;  // at t = 0
    bool zero = false;
};

BoundaryProfile zero_profile();
// a t^2 e^{-rate t}, with support truncated where it drops below 1e-17 |a|.
BoundaryProfile t2exp_profile(cplx amplitude = 1.0, double rate = 1.0);
BoundaryProfile scaled_sum(const BoundaryProfile& f1, cplx a, const BoundaryProfile& f2, cplx b);

struct LaplaceOptions {
    double t_max = 2.0;    // largest t at which the operator will be evaluated
    double x_max = 5.0;    // largest |x|
    double z_start = 10.0;  // first truncation of the z-integral; doubled up to z_cap
    double z_cap = 160.0;
    double tail_tol = 1e-7;
};

// Solution operator of i u_t + u_xx = 0 on x > 0 with zero initial data and
// u(0, t) = f(t), as the sum of the z-integrals over the two branches of the
// Laplace-transform representation.
class LaplaceBoundaryOperator {
public:
    explicit LaplaceBoundaryOperator(BoundaryProfile f, LaplaceOptions opt = {});

    cplx operator()(double x, double t) const;
    // q(tau) = int_0^inf e^{-i tau t} f(t) dt
    cplx transform(double tau) const;
    // The decaying branch evaluated with the oscillatory exponent e^{i z^2 t - i z x}
    // in place of e^{i z^2 t - z x}; kept for reporting how far it is from a solution.
    cplx literal_branch_variant(double x, double t) const;
    // Truncation of the z-integral reached for the last evaluation.
    double last_truncation() const { return last_z_; }

private:
    struct Level {
        std::vector<double> z, w;
        std::vector<cplx> q_plus, q_minus;  // q(z^2), q(-z^2)
    };
    void ensure_level(std::size_t k) const;
    template <class Kernel>
    cplx integrate(Kernel kernel) const;

    BoundaryProfile f_;
    LaplaceOptions opt_;
    int panels_ = 0;
    double panel_width_ = 0.0;
    std::vector<std::vector<cplx>> legendre_coeffs_;  // per panel, degree 0..15
    mutable std::vector<Level> levels_;
    mutable double last_z_ = 0.0;
};

struct AiryPotentialOptions {
    double x_min = 1e-4;
    double tol = 1e-7;
};

// V g(x, t) = int_0^t 3/(t-s) A''(x/(t-s)^{1/3}) g(s) ds for x > 0, evaluated after
// the substitution w = x/(t-s)^{1/3} as 3 int_{x t^{-1/3}}^inf A(w) g(t - x^3/w^3) dw.
class AiryBoundaryPotential {
public:
    explicit AiryBoundaryPotential(BoundaryProfile g, AiryPotentialOptions opt = {});
    double operator()(double x, double t) const;

private:
    BoundaryProfile g_;
    AiryPotentialOptions opt_;
};

// Value at x = 0 from samples at x = d, 2d, 4d, exact for quadratics in x.
template <class T>
T extrapolate_to_origin(T at_d, T at_2d, T at_4d) {
    return (8.0 * at_d - 6.0 * at_2d + at_4d) / 3.0;
}

struct OperatorCheck {
    std::string op;
    std::string profile;
    double trace_value = 0.0;        // extrapolated |trace|
    double trace_error = 0.0;        // |extrapolated - signal(t)|
    double normalization_constant = 1.0;
    double pde_residual = 0.0;
    double convergence_order = 0.0;  // against the stepper, filled by cross validation
    std::vector<double> discrepancies;
    double extra_residual = 0.0;     // residual of the literal branch variant (L only)
};

// Trace and PDE-residual checks at (x, t) = (0+, t) and (1, t).
OperatorCheck check_laplace_operator(const BoundaryProfile& f, double t = 1.0);
OperatorCheck check_airy_potential(const BoundaryProfile& g, double t = 1.0);

struct Resolution {
    int cells;
    double dt;
};

struct CrossValidation {
    std::string equation;  // "schrodinger" or "kdv"
    Direction direction = Direction::Right;
    std::vector<Resolution> resolutions;
    std::vector<double> discrepancies;  // max over sample points, per resolution
    double order = 0.0;
};

// Runs the linear stepper with zero initial data and the given boundary signal
// and compares against the quadrature operator at sample points up to t_final.
CrossValidation cross_validate_linear(const std::string& equation, Direction direction,
                                      const BoundaryProfile& signal, double t_final,
                                      const std::vector<Resolution>& resolutions,
                                      double length = 20.0);

// Least-squares slope of log(err) against log(h) for successively halved grids.
double fitted_order(const std::vector<double>& errors, const std::vector<double>& steps);

}  // namespace skdv
