#include "gshape/approx.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gshape/specfun.hpp"

namespace gshape {

namespace {

double dlog_f_from_stats(double a, const SufficientStats& stats, const GammaParams& prior) {
    const double n = static_cast<double>(stats.n);
    return n * specfun::log_minus_digamma(a) - stats.deviation +
           (prior.shape - 1.0) / a - prior.rate;
}

}  // namespace

GammaParams init_stirling(const SufficientStats& stats, const GammaParams& prior) {
    return GammaParams(prior.shape + 0.5 * static_cast<double>(stats.n),
                       prior.rate + stats.deviation);
}

GammaParams init_small_a(const SufficientStats& stats, const GammaParams& prior) {
    const double n = static_cast<double>(stats.n);
    return GammaParams(prior.shape + n, prior.rate + stats.deviation + n);
}

GammaParams refine_once(double a, const SufficientStats& stats, const GammaParams& prior) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("refine_once: matching point must be positive, got " +
                                std::to_string(a));
    }
    const double n = static_cast<double>(stats.n);
    const double shape = prior.shape + n * specfun::a_sq_trigamma_minus_a(a);
    const double rate = prior.rate + (shape - prior.shape) / a -
                        n * specfun::log_minus_digamma(a) + stats.deviation;
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
        throw std::runtime_error("refine_once: non-positive update (a=" + std::to_string(a) +
                                 ", n=" + std::to_string(stats.n) +
                                 ", T=" + std::to_string(stats.deviation) +
                                 ", a0=" + std::to_string(prior.shape) +
                                 ", b0=" + std::to_string(prior.rate) + ")");
    }
    return GammaParams(shape, rate);
}

ApproxResult approximate(const SufficientStats& stats, const GammaParams& prior,
                         const AlgoConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || cfg.max_iters < 1) {
        throw std::domain_error("approximate: invalid AlgoConfig");
    }
    GammaParams fit = init_stirling(stats, prior);
    int iterations = 0;
    bool converged = false;
    for (int j = 1; j <= cfg.max_iters; ++j) {
        const double a = fit.mean();
        fit = refine_once(a, stats, prior);
        iterations = j;
        if (std::fabs(a / fit.mean() - 1.0) < cfg.epsilon) {
            converged = true;
            break;
        }
    }
    const double a_star = fit.mean();
    const double residual = a_star * dlog_f_from_stats(a_star, stats, prior) + 1.0;
    return ApproxResult{fit, iterations, converged, residual};
}

double fixed_point_residual(const GammaParams& params, const ShapePosterior& post) {
    const double a = params.mean();
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("fixed_point_residual: nonpositive mean");
    }
    return a * dlog_f(a, post) + 1.0;
}

}  // namespace gshape
