#ifndef GSHAPE_HARNESS_HPP
#define GSHAPE_HARNESS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gshape/approx.hpp"
#include "gshape/quadrature.hpp"

namespace gshape {

// One cell of the simulation grid. b0 = a0 throughout so the prior mean
// is 1; the per-case seed is a stable hash of the coordinates and the
// master seed, so results do not depend on enumeration or scheduling.
struct GridCase {
    long n;
    double r;
    double a_true;
    double mu_true;
    double a0;
    int replicate;          // 1-based
    std::uint64_t seed;
};

struct CaseResult {
    GridCase grid_case;
    std::optional<ApproxResult> approx;
    std::optional<DiscrepancyReport> report;
    std::string status;     // "ok" or an error message
};

// Filter for run_grid; empty vectors mean "all values".
struct GridFilter {
    std::vector<double> a0;
    std::vector<long> n;
    std::vector<double> r;
};

std::uint64_t case_seed(std::uint64_t master_seed, const GridCase& c);

// Enumerate the grid (n x r x a_true x mu_true x a0 x replicate) in a
// fixed deterministic order, applying the filter.
std::vector<GridCase> enumerate_grid(std::uint64_t master_seed, const GridFilter& filter = {});

// Simulate one case: draw n points from Gamma(a_true, a_true/mu_true)
// with the case seed, fit with mu = r * mu_true and prior (a0, a0), and
// compare against the true full conditional. Errors are captured in the
// status field rather than thrown.
CaseResult run_case(const GridCase& c, const AlgoConfig& cfg, const QuadConfig& qcfg);

// Run all cases, optionally across threads. Result order matches the
// enumeration order regardless of thread count.
std::vector<CaseResult> run_grid(std::uint64_t master_seed, const AlgoConfig& cfg,
                                 const QuadConfig& qcfg, const GridFilter& filter = {},
                                 int num_threads = 1);

// Iteration-count histogram per a0; buckets are k = 1,2,3,4 and >= 5.
std::map<double, std::array<long, 5>> iteration_table(const std::vector<CaseResult>& results);

// Per-(a0, n) maxima of the replicate-averaged discrepancies.
struct WorstCaseRow {
    double a0;
    long n;
    double tv;
    double kl_fg;
    double kl_gf;
};
std::vector<WorstCaseRow> worst_case(const std::vector<CaseResult>& results);

// True-vs-approximate CDF table for one case (plot data).
struct CdfRow {
    double a;
    double true_cdf;
    double approx_cdf;
};
std::vector<CdfRow> cdf_dump(const GridCase& c, const AlgoConfig& cfg, const QuadConfig& qcfg,
                             int resolution);

// CSV emission. Formatting is locale-independent and byte-stable.
std::string results_to_csv(const std::vector<CaseResult>& results);
std::vector<CaseResult> results_from_csv(const std::string& csv);
std::string worst_case_to_csv(const std::vector<WorstCaseRow>& rows);
std::string cdf_to_csv(const std::vector<CdfRow>& rows);
std::string iteration_table_to_text(const std::map<double, std::array<long, 5>>& table);

}  // namespace gshape

#endif
