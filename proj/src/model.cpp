#include "gshape/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gshape/specfun.hpp"

namespace gshape {

namespace {

void require_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be positive and finite, got " +
                                std::to_string(v));
    }
}

}  // namespace

GammaParams::GammaParams(double shape_, double rate_) : shape(shape_), rate(rate_) {
    require_positive_finite(shape, "GammaParams::shape");
    require_positive_finite(rate, "GammaParams::rate");
}

SufficientStats::SufficientStats(long n_, double log_sum_, double sum_, double deviation_)
    : n(n_), log_sum(log_sum_), sum(sum_), deviation(deviation_) {
    if (n < 0) throw std::domain_error("SufficientStats: n must be nonnegative");
    if (!(sum >= 0.0) || !(deviation >= 0.0) || !std::isfinite(log_sum) ||
        !std::isfinite(sum) || !std::isfinite(deviation)) {
        throw std::domain_error("SufficientStats: invalid statistics");
    }
    if (n == 0 && (log_sum != 0.0 || sum != 0.0 || deviation != 0.0)) {
        throw std::domain_error("SufficientStats: n=0 requires R=S=T=0");
    }
}

ShapePosterior::ShapePosterior(SufficientStats stats_, GammaParams prior_, double mu_)
    : stats(stats_), prior(prior_), mu(mu_) {
    require_positive_finite(mu, "ShapePosterior::mu");
}

SufficientStats compute_stats(std::span<const double> data, double mu) {
    require_positive_finite(mu, "compute_stats: mu");
    double r = 0.0, s = 0.0, t = 0.0;
    for (double x : data) {
        require_positive_finite(x, "compute_stats: data point");
        const double lx = std::log(x);
        r += lx;
        s += x;
        const double z = x / mu;
        t += z - (lx - std::log(mu)) - 1.0;
    }
    if (t < 0.0) t = 0.0;  // clamp rounding residue; each term is >= 0
    return SufficientStats(static_cast<long>(data.size()), r, s, t);
}

double log_f(double a, const ShapePosterior& post) {
    require_positive_finite(a, "log_f: a");
    const double n = static_cast<double>(post.stats.n);
    const double t = post.stats.deviation;
    const double la = std::log(a);
    return n * a * la - n * specfun::log_gamma(a) - (t + n) * a +
           (post.prior.shape - 1.0) * la - post.prior.rate * a;
}

double dlog_f(double a, const ShapePosterior& post) {
    require_positive_finite(a, "dlog_f: a");
    const double n = static_cast<double>(post.stats.n);
    return n * specfun::log_minus_digamma(a) - post.stats.deviation +
           (post.prior.shape - 1.0) / a - post.prior.rate;
}

double d2log_f(double a, const ShapePosterior& post) {
    require_positive_finite(a, "d2log_f: a");
    const double n = static_cast<double>(post.stats.n);
    return -(n * specfun::a_sq_trigamma_minus_a(a) + (post.prior.shape - 1.0)) / (a * a);
}

double gamma_log_pdf(double a, const GammaParams& params) {
    require_positive_finite(a, "gamma_log_pdf: a");
    return params.shape * std::log(params.rate) - specfun::log_gamma(params.shape) +
           (params.shape - 1.0) * std::log(a) - params.rate * a;
}

}  // namespace gshape
