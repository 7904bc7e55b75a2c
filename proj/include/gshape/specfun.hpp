#ifndef GSHAPE_SPECFUN_HPP
#define GSHAPE_SPECFUN_HPP

// Scalar special functions: log-gamma, digamma, trigamma, the regularized
// lower incomplete gamma and its inverse, and cancellation-safe composite
// forms used by the shape-posterior code. All functions are pure and
// thread-safe; arguments outside the domain throw std::domain_error.

namespace gshape::specfun {

// ln Gamma(x), x > 0.
double log_gamma(double x);

// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

// psi'(x), x > 0.
double trigamma(double x);

// log(a) - psi(a), evaluated without cancellation for large a.
// Strictly positive for all finite a > 0; decreases monotonically,
// behaving like 1/(2a) as a -> infinity.
double log_minus_digamma(double a);

// a^2 * psi'(a) - a, evaluated without cancellation.
// Tends to 1 as a -> 0 and to 1/2 as a -> infinity.
double a_sq_trigamma_minus_a(double a);

// Regularized lower incomplete gamma P(shape, x), shape > 0, x >= 0.
double reg_lower_inc_gamma(double shape, double x);

// Inverse of the Gamma(shape, rate) CDF: returns a > 0 with
// P(shape, rate*a) = p. Throws std::domain_error for p outside (0,1)
// and std::runtime_error if the root solve fails to converge.
double gamma_quantile(double p, double shape, double rate);

}  // namespace gshape::specfun

#endif
