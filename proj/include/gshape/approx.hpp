#ifndef GSHAPE_APPROX_HPP
#define GSHAPE_APPROX_HPP

#include "gshape/model.hpp"

namespace gshape {

// Iteration control for the derivative-matching refinement.
struct AlgoConfig {
    double epsilon = 1e-8;  // relative change tolerance on the mean
    int max_iters = 10;
};

// Result of the gamma fit to the shape full conditional.
struct ApproxResult {
    GammaParams params;     // (A, B)
    int iterations;         // refinement steps performed
    bool converged;
    double residual;        // a * dlog_f(a) + 1 at a = A/B
};

// Stirling-regime starting point: (a0 + n/2, b0 + T). The default.
GammaParams init_stirling(const SufficientStats& stats, const GammaParams& prior);

// Small-shape starting point: (a0 + n, b0 + T + n).
GammaParams init_small_a(const SufficientStats& stats, const GammaParams& prior);

// One derivative-matching refinement at the point a:
//   A = a0 + n (a^2 psi'(a) - a)
//   B = b0 + (A - a0)/a - n (log a - psi(a)) + T.
// Throws std::runtime_error if either output fails to be positive.
GammaParams refine_once(double a, const SufficientStats& stats, const GammaParams& prior);

// Full iterative fit: initialize via init_stirling, refine at the current
// mean A/B until the relative change in the mean drops below cfg.epsilon
// or cfg.max_iters refinements have run. Exhausting max_iters is not an
// error; the last iterate is returned with converged=false.
ApproxResult approximate(const SufficientStats& stats, const GammaParams& prior,
                         const AlgoConfig& cfg = {});

// Scale-free fixed-point diagnostic a * dlog_f(a) + 1 evaluated at the
// mean a = shape/rate of params. Zero exactly at fixed points.
double fixed_point_residual(const GammaParams& params, const ShapePosterior& post);

}  // namespace gshape

#endif
