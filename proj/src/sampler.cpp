#include "gshape/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gshape/specfun.hpp"

namespace gshape {

double RngState::uniform() {
    // 53-bit mantissa draw; rejects 0 so the result lies in (0,1).
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double RngState::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    has_spare_ = true;
    return u * m;
}

namespace {

// Marsaglia-Tsang for shape >= 1, returning the unit-rate draw.
double gamma_unit_rate(RngState& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = (1.0 / 3.0) / std::sqrt(d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double sample_gamma(RngState& rng, const GammaParams& params) {
    if (params.shape >= 1.0) {
        return gamma_unit_rate(rng, params.shape) / params.rate;
    }
    // Boost: if Y ~ Gamma(shape+1) and U ~ Unif(0,1) then
    // Y * U^{1/shape} ~ Gamma(shape). Combined in log space since the
    // power factor underflows for tiny shapes.
    constexpr int max_retries = 64;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const double y = gamma_unit_rate(rng, params.shape + 1.0);
        const double log_draw =
            std::log(y) + std::log(rng.uniform()) / params.shape - std::log(params.rate);
        const double draw = std::exp(log_draw);
        if (draw > 0.0) return draw;
    }
    return std::numeric_limits<double>::min();
}

double gibbs_update_shape(RngState& rng, std::span<const double> data, double mu,
                          const GammaParams& prior, const AlgoConfig& cfg) {
    const SufficientStats stats = compute_stats(data, mu);
    const ApproxResult fit = approximate(stats, prior, cfg);
    return sample_gamma(rng, fit.params);
}

MhOutcome mh_update_shape(RngState& rng, double a_current, std::span<const double> data,
                          double mu, const GammaParams& prior, const AlgoConfig& cfg) {
    if (!(a_current > 0.0) || !std::isfinite(a_current)) {
        throw std::domain_error("mh_update_shape: current shape must be positive");
    }
    const SufficientStats stats = compute_stats(data, mu);
    const ApproxResult fit = approximate(stats, prior, cfg);
    const ShapePosterior post(stats, prior, mu);

    const double proposal = sample_gamma(rng, fit.params);
    const double log_ratio = (log_f(proposal, post) - log_f(a_current, post)) +
                             (gamma_log_pdf(a_current, fit.params) -
                              gamma_log_pdf(proposal, fit.params));
    const double log_alpha = std::min(0.0, log_ratio);
    const bool accepted = std::log(rng.uniform()) < log_alpha;
    return MhOutcome{accepted ? proposal : a_current, accepted, log_alpha, fit.params};
}

double gibbs_update_mean(RngState& rng, std::span<const double> data, double a,
                         double mean_prior_shape, double mean_prior_scale) {
    if (!(a > 0.0) || !(mean_prior_shape > 0.0) || !(mean_prior_scale > 0.0)) {
        throw std::domain_error("gibbs_update_mean: nonpositive parameter");
    }
    double s = 0.0;
    for (double x : data) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::domain_error("gibbs_update_mean: data must be positive");
        }
        s += x;
    }
    const double n = static_cast<double>(data.size());
    const GammaParams posterior(mean_prior_shape + n * a, mean_prior_scale + a * s);
    return 1.0 / sample_gamma(rng, posterior);
}

}  // namespace gshape
