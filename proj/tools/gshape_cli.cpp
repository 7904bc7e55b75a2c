// Command-line front end: fit a single dataset, run the simulation grid,
// tabulate iteration counts, aggregate worst-case discrepancies, dump CDF
// comparison data, and check the MH sampler against quadrature moments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gshape/harness.hpp"
#include "gshape/sampler.hpp"

namespace {

using nlohmann::json;

std::vector<double> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path);
    std::vector<double> data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        data.push_back(std::stod(line));
    }
    return data;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

// Integrated autocorrelation time by summing the empirical autocorrelation
// until it first drops below 0.05 (capped at lag n/2).
double autocorr_time(const std::vector<double>& chain) {
    const std::size_t n = chain.size();
    double mean = 0.0;
    for (double v : chain) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : chain) var += (v - mean) * (v - mean);
    if (var == 0.0) return 1.0;
    double tau = 1.0;
    for (std::size_t lag = 1; lag < n / 2; ++lag) {
        double c = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            c += (chain[i] - mean) * (chain[i + lag] - mean);
        }
        const double rho = c / var;
        if (rho < 0.05) break;
        tau += 2.0 * rho;
    }
    return tau;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gamma-shape full conditional approximation toolkit"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "Fit the gamma approximation to one dataset");
    std::string fit_data;
    double fit_mu = 1.0, fit_a0 = 1.0, fit_b0 = 1.0, fit_eps = 1e-8;
    int fit_max_iter = 10;
    fit->add_option("--data", fit_data, "Text file, one positive decimal per line")->required();
    fit->add_option("--mu", fit_mu)->required();
    fit->add_option("--a0", fit_a0)->required();
    fit->add_option("--b0", fit_b0)->required();
    fit->add_option("--eps", fit_eps);
    fit->add_option("--max-iter", fit_max_iter);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run the simulation grid");
    std::vector<double> sim_a0, sim_r;
    std::vector<long> sim_n;
    std::uint64_t sim_seed = 0;
    int sim_quad = 100000;
    int sim_threads = 1;
    std::string sim_out;
    sim->add_option("--a0", sim_a0, "Restrict prior shapes (default all)");
    sim->add_option("--n", sim_n, "Restrict sample sizes (default all)");
    sim->add_option("--r", sim_r, "Restrict mean ratios (default all)");
    sim->add_option("--master-seed", sim_seed);
    sim->add_option("--quad-points", sim_quad);
    sim->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");
    sim->add_option("--out", sim_out, "CSV path (default stdout)");

    // table
    auto* table = app.add_subcommand("table", "Iteration-count histogram from a results CSV");
    std::string table_in;
    table->add_option("--in", table_in)->required();

    // worst
    auto* worst = app.add_subcommand("worst", "Per-(a0,n) worst-case discrepancies");
    std::string worst_in, worst_out;
    worst->add_option("--in", worst_in)->required();
    worst->add_option("--out", worst_out);

    // cdf
    auto* cdf = app.add_subcommand("cdf", "True vs approximate CDF for one grid case");
    gshape::GridCase cdf_case{1, 1.0, 1.0, 1.0, 1.0, 1, 0};
    int cdf_points = 512, cdf_quad = 100000;
    std::uint64_t cdf_seed = 0;
    std::string cdf_out;
    cdf->add_option("--n", cdf_case.n)->required();
    cdf->add_option("--r", cdf_case.r)->required();
    cdf->add_option("--a-true", cdf_case.a_true)->required();
    cdf->add_option("--mu-true", cdf_case.mu_true)->required();
    cdf->add_option("--a0", cdf_case.a0)->required();
    cdf->add_option("--replicate", cdf_case.replicate);
    cdf->add_option("--master-seed", cdf_seed);
    cdf->add_option("--points", cdf_points);
    cdf->add_option("--quad-points", cdf_quad);
    cdf->add_option("--out", cdf_out);

    // mh-check
    auto* mh = app.add_subcommand("mh-check", "Compare an MH chain against quadrature moments");
    std::string mh_data;
    double mh_mu = 1.0, mh_a0 = 1.0, mh_b0 = 1.0;
    std::uint64_t mh_steps = 100000, mh_seed = 0;
    int mh_quad = 100000;
    mh->add_option("--data", mh_data)->required();
    mh->add_option("--mu", mh_mu)->required();
    mh->add_option("--a0", mh_a0)->required();
    mh->add_option("--b0", mh_b0)->required();
    mh->add_option("--steps", mh_steps)->required();
    mh->add_option("--seed", mh_seed)->required();
    mh->add_option("--quad-points", mh_quad);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit) {
            const std::vector<double> data = read_data_file(fit_data);
            const gshape::SufficientStats stats = gshape::compute_stats(data, fit_mu);
            const gshape::GammaParams prior(fit_a0, fit_b0);
            const gshape::AlgoConfig cfg{fit_eps, fit_max_iter};
            const gshape::ApproxResult res = gshape::approximate(stats, prior, cfg);
            json out{{"A", res.params.shape},
                     {"B", res.params.rate},
                     {"iterations", res.iterations},
                     {"converged", res.converged},
                     {"residual", res.residual}};
            std::cout << out.dump() << '\n';
        } else if (*sim) {
            if (sim_threads == 0) {
                sim_threads = static_cast<int>(std::thread::hardware_concurrency());
            }
            gshape::GridFilter filter{sim_a0, sim_n, sim_r};
            const auto results = gshape::run_grid(sim_seed, gshape::AlgoConfig{},
                                                  gshape::QuadConfig{sim_quad}, filter,
                                                  sim_threads);
            write_output(sim_out, gshape::results_to_csv(results));
        } else if (*table) {
            const auto results = gshape::results_from_csv(read_file(table_in));
            std::cout << gshape::iteration_table_to_text(gshape::iteration_table(results));
        } else if (*worst) {
            const auto results = gshape::results_from_csv(read_file(worst_in));
            write_output(worst_out, gshape::worst_case_to_csv(gshape::worst_case(results)));
        } else if (*cdf) {
            cdf_case.seed = gshape::case_seed(cdf_seed, cdf_case);
            const auto rows = gshape::cdf_dump(cdf_case, gshape::AlgoConfig{},
                                               gshape::QuadConfig{cdf_quad}, cdf_points);
            write_output(cdf_out, gshape::cdf_to_csv(rows));
        } else if (*mh) {
            const std::vector<double> data = read_data_file(mh_data);
            const gshape::GammaParams prior(mh_a0, mh_b0);
            gshape::RngState rng(mh_seed);

            const gshape::SufficientStats stats = gshape::compute_stats(data, mh_mu);
            const gshape::ApproxResult fit_res = gshape::approximate(stats, prior, {});
            const gshape::ShapePosterior post(stats, prior, mh_mu);
            const gshape::DiscrepancyReport rep =
                gshape::discrepancy(post, fit_res.params, gshape::QuadConfig{mh_quad});

            std::vector<double> chain;
            chain.reserve(mh_steps);
            double a = fit_res.params.mean();
            std::uint64_t accepted = 0;
            for (std::uint64_t i = 0; i < mh_steps; ++i) {
                const auto step = gshape::mh_update_shape(rng, a, data, mh_mu, prior, {});
                a = step.value;
                accepted += step.accepted ? 1 : 0;
                chain.push_back(a);
            }
            double mean = 0.0;
            for (double v : chain) mean += v;
            mean /= static_cast<double>(chain.size());
            double var = 0.0;
            for (double v : chain) var += (v - mean) * (v - mean);
            var /= static_cast<double>(chain.size() - 1);

            json out{{"chain_mean", mean},
                     {"chain_var", var},
                     {"acceptance_rate",
                      static_cast<double>(accepted) / static_cast<double>(mh_steps)},
                     {"autocorr_time", autocorr_time(chain)},
                     {"quad_mean", rep.mean_f},
                     {"quad_var", rep.var_f}};
            std::cout << out.dump() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
