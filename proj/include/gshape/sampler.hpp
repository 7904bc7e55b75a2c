#ifndef GSHAPE_SAMPLER_HPP
#define GSHAPE_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <span>

#include "gshape/approx.hpp"
#include "gshape/model.hpp"

namespace gshape {

// Deterministic seedable generator. The raw stream comes from
// std::mt19937_64 (bit-exact across platforms by the standard); all
// variate transforms are implemented here so that draw sequences are
// reproducible too.
class RngState {
public:
    explicit RngState(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0,1).
    double uniform();

    // Standard normal via the Marsaglia polar method.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

// One Metropolis-Hastings update outcome for the shape parameter.
struct MhOutcome {
    double value;            // new state
    bool accepted;
    double log_accept_prob;  // min(0, log acceptance ratio)
    GammaParams proposal;    // the Gamma(A,B) independence proposal used
};

// Draw from Gamma(shape, rate). Shape >= 1 uses Marsaglia-Tsang; smaller
// shapes draw at shape+1 and apply the U^{1/shape} boost in log space.
// Output is strictly positive (underflowing boosted draws are redrawn a
// bounded number of times, then floored at the smallest positive normal).
double sample_gamma(RngState& rng, const GammaParams& params);

// Approximate Gibbs update: fit the gamma approximation to the shape full
// conditional and sample from it.
double gibbs_update_shape(RngState& rng, std::span<const double> data, double mu,
                          const GammaParams& prior, const AlgoConfig& cfg = {});

// Exact MH update using the gamma approximation as an independence
// proposal; the unnormalized log_f is valid in the ratio because the
// normalizer cancels.
MhOutcome mh_update_shape(RngState& rng, double a_current, std::span<const double> data,
                          double mu, const GammaParams& prior, const AlgoConfig& cfg = {});

// Conjugate update of the mean given the shape a, with the prior
// mu ~ InvGamma(mean_prior_shape, mean_prior_scale): draws from
// InvGamma(alpha0 + n a, beta0 + a S).
double gibbs_update_mean(RngState& rng, std::span<const double> data, double a,
                         double mean_prior_shape, double mean_prior_scale);

}  // namespace gshape

#endif
