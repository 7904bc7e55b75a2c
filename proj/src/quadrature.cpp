#include "gshape/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gshape/specfun.hpp"

namespace gshape {

namespace {

// Pairwise reduction; summation order depends only on the vector, so
// results are bit-stable however the surrounding work is scheduled.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_mean(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> quad_nodes(const GammaParams& g, const QuadConfig& cfg) {
    if (cfg.num_points < 1) throw std::domain_error("quad_nodes: num_points must be >= 1");
    const int n = cfg.num_points;
    std::vector<double> nodes(n);
    const double lg = specfun::log_gamma(g.shape);

    // First node by the general solver; subsequent nodes warm-start a
    // Newton solve on the unit-rate scale from the previous node.
    double x = specfun::gamma_quantile(0.5 / n, g.shape, 1.0);
    nodes[0] = x / g.rate;
    for (int i = 1; i < n; ++i) {
        const double p = (i + 0.5) / n;
        bool ok = false;
        for (int iter = 0; iter < 32; ++iter) {
            const double f = specfun::reg_lower_inc_gamma(g.shape, x) - p;
            if (std::fabs(f) <= 1e-12) { ok = true; break; }
            const double log_pdf = (g.shape - 1.0) * std::log(x) - x - lg;
            const double step = f * std::exp(-log_pdf);
            double xn = x - step;
            if (!(xn > 0.0) || !std::isfinite(xn)) xn = 0.5 * x;
            if (xn == x) { ok = true; break; }
            x = xn;
        }
        if (!ok || !(x / g.rate > nodes[i - 1])) {
            x = g.rate * specfun::gamma_quantile(p, g.shape, g.rate);
        }
        nodes[i] = x / g.rate;
        if (!(nodes[i] > nodes[i - 1])) {
            throw std::runtime_error("quad_nodes: nodes not strictly increasing at i=" +
                                     std::to_string(i));
        }
    }
    return nodes;
}

DiscrepancyReport discrepancy(const ShapePosterior& post, const GammaParams& g,
                              const QuadConfig& cfg) {
    if (cfg.num_points < 2) throw std::domain_error("discrepancy: num_points must be >= 2");
    const std::vector<double> nodes = quad_nodes(g, cfg);
    const std::size_t n = nodes.size();

    std::vector<double> log_w(n);
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        log_w[i] = log_f(nodes[i], post) - gamma_log_pdf(nodes[i], g);
        max_lw = std::max(max_lw, log_w[i]);
    }
    if (!std::isfinite(max_lw)) {
        throw std::runtime_error("discrepancy: non-finite log weight");
    }

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(log_w[i] - max_lw);
        if (!std::isfinite(w[i])) {
            throw std::runtime_error("discrepancy: weight overflow at node " +
                                     std::to_string(nodes[i]));
        }
    }
    const double z_bar = pairwise_mean(w);
    if (!(z_bar > 0.0) || !std::isfinite(z_bar)) {
        throw std::runtime_error("discrepancy: degenerate normalizer");
    }
    const double log_z = max_lw + std::log(z_bar);

    // Self-normalized ratios r_i = f_hat(a_i) / g(a_i).
    std::vector<double> scratch(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = 0.5 * std::fabs(w[i] / z_bar - 1.0);
    double tv = pairwise_mean(scratch);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = w[i] / z_bar;
        scratch[i] = r > 0.0 ? r * std::log(r) : 0.0;
    }
    double kl_fg = pairwise_mean(scratch);

    const double log_zbar = std::log(z_bar);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = log_w[i] - max_lw - log_zbar;
    double kl_gf = -pairwise_mean(scratch);

    for (std::size_t i = 0; i < n; ++i) scratch[i] = (w[i] / z_bar) * nodes[i];
    const double mean_f = pairwise_mean(scratch);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = nodes[i] - mean_f;
        scratch[i] = (w[i] / z_bar) * d * d;
    }
    const double var_f = pairwise_mean(scratch);

    tv = std::clamp(tv, 0.0, 1.0);
    if (kl_fg < 0.0) {
        if (kl_fg < -1e-9) throw std::runtime_error("discrepancy: kl_fg below noise floor");
        kl_fg = 0.0;
    }
    if (kl_gf < 0.0) {
        if (kl_gf < -1e-9) throw std::runtime_error("discrepancy: kl_gf below noise floor");
        kl_gf = 0.0;
    }

    DiscrepancyReport rep;
    rep.log_z_hat = log_z;
    rep.z_hat = std::exp(log_z);
    rep.tv = tv;
    rep.kl_fg = kl_fg;
    rep.kl_gf = kl_gf;
    rep.mean_f = mean_f;
    rep.var_f = var_f;
    rep.num_points = cfg.num_points;
    return rep;
}

}  // namespace gshape
