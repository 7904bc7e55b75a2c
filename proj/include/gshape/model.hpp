#ifndef GSHAPE_MODEL_HPP
#define GSHAPE_MODEL_HPP

#include <span>

namespace gshape {

// Shape/rate parameter pair of a gamma distribution. Also used for the
// prior (a0, b0) on the shape parameter.
struct GammaParams {
    double shape;
    double rate;

    GammaParams(double shape_, double rate_);
    double mean() const { return shape / rate; }
};

// Sufficient statistics of the data given the conditioning mean mu:
//   n, R = sum log x_i, S = sum x_i,
//   T = sum (x_i/mu - log(x_i/mu) - 1) >= 0.
struct SufficientStats {
    long n = 0;
    double log_sum = 0.0;   // R
    double sum = 0.0;       // S
    double deviation = 0.0; // T

    SufficientStats() = default;
    SufficientStats(long n_, double log_sum_, double sum_, double deviation_);
};

// Everything defining the unnormalized full conditional of the shape:
// data reduction, gamma prior on the shape, and the conditioning mean.
struct ShapePosterior {
    SufficientStats stats;
    GammaParams prior;
    double mu;

    ShapePosterior(SufficientStats stats_, GammaParams prior_, double mu_);
};

// Reduce data to (n, R, S, T). T is accumulated from the per-observation
// nonnegative terms x/mu - log(x/mu) - 1, so T >= 0 holds exactly.
SufficientStats compute_stats(std::span<const double> data, double mu);

// Unnormalized log density of the shape full conditional (additive
// constant fixed at zero):
//   n a log a - n lgamma(a) - (T+n) a + (a0-1) log a - b0 a.
double log_f(double a, const ShapePosterior& post);

// First derivative of log_f, via the cancellation-safe composite
// n (log a - psi(a)) - T + (a0-1)/a - b0.
double dlog_f(double a, const ShapePosterior& post);

// Second derivative of log_f: -(n (a^2 psi'(a) - a) + (a0-1)) / a^2.
double d2log_f(double a, const ShapePosterior& post);

// log density of Gamma(shape, rate) at a > 0.
double gamma_log_pdf(double a, const GammaParams& params);

}  // namespace gshape

#endif
