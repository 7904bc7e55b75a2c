#ifndef GSHAPE_QUADRATURE_HPP
#define GSHAPE_QUADRATURE_HPP

#include <vector>

#include "gshape/model.hpp"

namespace gshape {

struct QuadConfig {
    int num_points = 100000;
};

// Quadrature-based comparison of the true full conditional f against a
// gamma density g. The normalizer is kept in log form internally; z_hat
// is exp(log_z_hat) when representable.
struct DiscrepancyReport {
    double log_z_hat;
    double z_hat;
    double tv;        // total variation distance, in [0,1]
    double kl_fg;     // KL(f || g), clamped at 0
    double kl_gf;     // KL(g || f), clamped at 0
    double mean_f;    // posterior mean of f
    double var_f;     // posterior variance of f
    int num_points;
};

// Midpoint-in-u importance nodes: a_i = quantile((i-0.5)/N) of
// Gamma(g.shape, g.rate), strictly increasing.
std::vector<double> quad_nodes(const GammaParams& g, const QuadConfig& cfg);

// Normalizer, TV distance, both KL divergences, and moments of the true
// full conditional, via importance weights f/g at the quad_nodes of g.
DiscrepancyReport discrepancy(const ShapePosterior& post, const GammaParams& g,
                              const QuadConfig& cfg);

}  // namespace gshape

#endif
