#include "gshape/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gshape::specfun {

namespace {

void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": argument must be positive and finite, got " +
                                std::to_string(x));
    }
}

// Asymptotic tail of psi(x) - ln(x) + 1/(2x), valid for x >= 10:
//   psi(x) = ln(x) - 1/(2x) - sum_k B_{2k} / (2k x^{2k}).
double digamma_asymptotic(double x) {
    const double r = 1.0 / (x * x);
    // B_2/2, B_4/4, ... over x^{2k}
    double s = r * (1.0 / 12.0 -
               r * (1.0 / 120.0 -
               r * (1.0 / 252.0 -
               r * (1.0 / 240.0 -
               r * (1.0 / 132.0 -
               r * (691.0 / 32760.0 -
               r * (1.0 / 12.0)))))));
    return std::log(x) - 0.5 / x - s;
}

// psi'(x) for x >= 10 via the standard expansion
//   psi'(x) = 1/x + 1/(2x^2) + sum_k B_{2k} / x^{2k+1}.
double trigamma_asymptotic(double x) {
    const double r = 1.0 / (x * x);
    double s = 1.0 / 6.0 -
               r * (1.0 / 30.0 -
               r * (1.0 / 42.0 -
               r * (1.0 / 30.0 -
               r * (5.0 / 66.0 -
               r * (691.0 / 2730.0 -
               r * (7.0 / 6.0))))));
    return 1.0 / x + 0.5 / (x * x) + s / (x * x * x);
}

constexpr double kShiftThreshold = 10.0;

}  // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    return std::lgamma(x);
}

double digamma(double x) {
    require_positive(x, "digamma");
    double acc = 0.0;
    while (x < kShiftThreshold) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    return acc + digamma_asymptotic(x);
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    double acc = 0.0;
    while (x < kShiftThreshold) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    return acc + trigamma_asymptotic(x);
}

double log_minus_digamma(double a) {
    require_positive(a, "log_minus_digamma");
    if (a >= 256.0) {
        // log(a) - psi(a) = 1/(2a) + 1/(12a^2) - 1/(120a^4) + 1/(252a^6) - ...
        const double r = 1.0 / (a * a);
        return 0.5 / a + r * (1.0 / 12.0 -
                         r * (1.0 / 120.0 -
                         r * (1.0 / 252.0 -
                         r * (1.0 / 240.0))));
    }
    return std::log(a) - digamma(a);
}

double a_sq_trigamma_minus_a(double a) {
    require_positive(a, "a_sq_trigamma_minus_a");
    if (a >= 256.0) {
        // a^2 psi'(a) - a = 1/2 + 1/(6a) - 1/(30a^3) + 1/(42a^5) - 1/(30a^7) + ...
        const double r = 1.0 / (a * a);
        return 0.5 + (1.0 / a) * (1.0 / 6.0 -
                             r * (1.0 / 30.0 -
                             r * (1.0 / 42.0 -
                             r * (1.0 / 30.0))));
    }
    // No cancellation here: a^2 psi'(a) stays well away from a below the
    // switch point (their difference exceeds 1/2).
    return a * a * trigamma(a) - a;
}

double reg_lower_inc_gamma(double shape, double x) {
    require_positive(shape, "reg_lower_inc_gamma");
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("reg_lower_inc_gamma: x must be finite and >= 0");
    }
    if (x == 0.0) return 0.0;

    const double lg = std::lgamma(shape);
    // log of the leading factor x^shape e^{-x} / Gamma(shape)
    const double log_lead = shape * std::log(x) - x - lg;
    if (log_lead < -745.0) {
        // Factor underflows: P is either ~0 (left tail) or ~1 (right tail).
        return x < shape ? 0.0 : 1.0;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    const int max_iter = 1000 + static_cast<int>(10.0 * std::sqrt(shape));

    if (x < shape + 1.0) {
        // Series: P = x^s e^-x / Gamma(s+1) * sum_k x^k / ((s+1)...(s+k)).
        double term = 1.0 / shape;
        double sum = term;
        double denom = shape;
        for (int k = 0; k < max_iter; ++k) {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if (term < sum * eps) break;
        }
        double p = std::exp(log_lead) * sum;
        return p < 1.0 ? p : 1.0;
    }

    // Continued fraction for Q (modified Lentz).
    const double tiny = 1e-300;
    double b = x + 1.0 - shape;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - shape);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    double q = std::exp(log_lead) * h;
    double p = 1.0 - q;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

namespace {

// Rational approximation to the standard normal quantile (Acklam).
// Only used to seed the incomplete-gamma root solve.
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double gamma_quantile(double p, double shape, double rate) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("gamma_quantile: p must lie in (0,1)");
    }
    require_positive(shape, "gamma_quantile");
    require_positive(rate, "gamma_quantile");

    // Left-tail inversion of P ~ x^s / Gamma(s+1) pins the quantile's
    // magnitude; if even that is below the double range, the quantile is
    // not representable (tiny shapes put deep-tail quantiles at e^-1000
    // and beyond).
    {
        const double lx_tail = (std::log(p) + std::lgamma(shape + 1.0)) / shape;
        if (lx_tail < -708.0) {
            throw std::underflow_error(
                "gamma_quantile: quantile underflows the double range (p=" + std::to_string(p) +
                ", shape=" + std::to_string(shape) + ")");
        }
    }

    // Initial guess for x with P(shape, x) = p: Wilson-Hilferty, falling
    // back to the small-x inversion P ~ x^s / Gamma(s+1) when it degenerates.
    double x;
    {
        const double z = normal_quantile(p);
        const double t = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
        x = shape * t * t * t;
        if (!(x > 0.0) || !std::isfinite(x) || shape < 0.5) {
            const double lx = (std::log(p) + std::lgamma(shape + 1.0)) / shape;
            x = std::exp(lx);
            if (x == 0.0) x = std::numeric_limits<double>::min();
        }
    }

    // Bracket the root.
    double lo = x, hi = x;
    double flo = reg_lower_inc_gamma(shape, lo) - p;
    double fhi = flo;
    for (int i = 0; i < 200 && flo > 0.0; ++i) {
        hi = lo;
        fhi = flo;
        lo *= 0.25;
        flo = reg_lower_inc_gamma(shape, lo) - p;
    }
    for (int i = 0; i < 200 && fhi < 0.0; ++i) {
        lo = hi;
        flo = fhi;
        hi *= 4.0;
        fhi = reg_lower_inc_gamma(shape, hi) - p;
    }
    if (flo > 0.0 || fhi < 0.0) {
        throw std::runtime_error("gamma_quantile: failed to bracket root (p=" +
                                 std::to_string(p) + ", shape=" + std::to_string(shape) + ")");
    }

    const double lg = std::lgamma(shape);
    x = std::clamp(x, lo, hi);
    double f = reg_lower_inc_gamma(shape, x) - p;
    for (int iter = 0; iter < 100; ++iter) {
        if (std::fabs(f) <= 1e-14 + 1e-12 * p) break;
        if (f > 0.0) hi = x; else lo = x;
        // Newton step in log(x); the derivative wrt log x is x * pdf(x).
        const double log_dpdlx = shape * std::log(x) - x - lg;
        double xn = x * std::exp(-f * std::exp(-log_dpdlx));
        if (!(xn > lo && xn < hi) || !std::isfinite(xn)) {
            xn = 0.5 * (lo + hi);
        }
        if (xn == x) break;
        x = xn;
        f = reg_lower_inc_gamma(shape, x) - p;
    }
    if (std::fabs(f) > 1e-9) {
        throw std::runtime_error("gamma_quantile: root solve did not converge (p=" +
                                 std::to_string(p) + ", shape=" + std::to_string(shape) +
                                 ", residual=" + std::to_string(f) + ")");
    }
    return x / rate;
}

}  // namespace gshape::specfun
