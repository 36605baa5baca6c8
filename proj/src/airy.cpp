#include "airy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace skdv {

namespace {

constexpr double kSeriesLimitPositive = 6.0;
constexpr double kSeriesLimitNegative = 7.0;

double maclaurin(double x) {
    // Ai(x) = c1 f(x) - c2 g(x), f = sum x^{3k} / ..., g = sum x^{3k+1} / ...
    const double c1 = 0.355028053887817239260063186004;
    const double c2 = 0.258819403792806798405183560189;
    const double x3 = x * x * x;
    double f = 1.0, g = x;
    double tf = 1.0, tg = x;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::abs(g) + 1e-300)
            break;
    }
    return c1 * f - c2 * g;
}

// u_k coefficients of the large-argument expansion, u_0 = 1.
double next_u(double prev, int k) {
    return prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
}

double asymptotic_positive(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double sum = 1.0, uk = 1.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
        uk = next_u(uk, k);
        double t = uk / std::pow(zeta, k) * ((k % 2) ? -1.0 : 1.0);
        if (std::abs(t) > std::abs(term)) break;
        term = t;
        sum += t;
        if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25)) * sum;
}

double asymptotic_negative(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double p = 1.0, q = 0.0, uk = 1.0, last = 1.0;
    for (int k = 1; k < 80; ++k) {
        uk = next_u(uk, k);
        double t = uk / std::pow(zeta, k);
        if (t > last) break;
        last = t;
        // k odd contributes to Q with sign (-1)^{(k-1)/2}; k even to P with (-1)^{k/2}.
        if (k % 2) q += (((k - 1) / 2) % 2 ? -t : t);
        else p += ((k / 2) % 2 ? -t : t);
        if (t < 1e-17) break;
    }
    const double phase = zeta + 0.25 * std::numbers::pi;
    return (std::sin(phase) * p - std::cos(phase) * q) / (std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
}

}  // namespace

double airy_ai(double x) {
    if (std::isnan(x)) throw RangeError("Airy argument is NaN");
    if (x > 50.0) return 0.0;
    if (x < -50.0) {
        std::ostringstream os;
        os << "Airy argument " << x << " below -50";
        throw RangeError(os.str());
    }
    if (x >= -kSeriesLimitNegative && x <= kSeriesLimitPositive) return maclaurin(x);
    return x > 0 ? asymptotic_positive(x) : asymptotic_negative(x);
}

double airy_kernel(double x) {
    const double s = std::cbrt(1.0 / 3.0);
    return s * airy_ai(s * x);
}

double airy_kernel_d2(double x) { return x / 3.0 * airy_kernel(x); }

AiryEval airy_eval(double x) {
    AiryEval e;
    e.x = x;
    e.ai = airy_ai(x);
    e.kernel = airy_kernel(x);
    e.kernel_d2 = x / 3.0 * e.kernel;
    return e;
}

}  // namespace skdv
