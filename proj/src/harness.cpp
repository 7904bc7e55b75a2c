#include "gshape/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gshape/sampler.hpp"
#include "gshape/specfun.hpp"

namespace gshape {

namespace {

constexpr long kGridN[] = {1, 10, 100};
constexpr double kGridR[] = {0.5, 1.0, 2.0};
constexpr double kGridA0[] = {1.0, 0.1, 0.01};
constexpr int kMinExp = -6, kMaxExp = 6;
constexpr int kReplicates = 5;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Shortest round-trip decimal representation.
std::string fmt(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return out;
}

std::vector<double> simulate_data(const GridCase& c, RngState& rng) {
    const GammaParams gen(c.a_true, c.a_true / c.mu_true);
    std::vector<double> data(static_cast<std::size_t>(c.n));
    for (double& x : data) x = sample_gamma(rng, gen);
    return data;
}

}  // namespace

std::uint64_t case_seed(std::uint64_t master_seed, const GridCase& c) {
    std::uint64_t h = master_seed;
    splitmix64(h);
    h ^= splitmix64(h) + static_cast<std::uint64_t>(c.n);
    h ^= splitmix64(h) + std::bit_cast<std::uint64_t>(c.r);
    h ^= splitmix64(h) + std::bit_cast<std::uint64_t>(c.a_true);
    h ^= splitmix64(h) + std::bit_cast<std::uint64_t>(c.mu_true);
    h ^= splitmix64(h) + std::bit_cast<std::uint64_t>(c.a0);
    h ^= splitmix64(h) + static_cast<std::uint64_t>(c.replicate);
    return splitmix64(h);
}

std::vector<GridCase> enumerate_grid(std::uint64_t master_seed, const GridFilter& filter) {
    auto keep = [](const auto& list, auto v) {
        if (list.empty()) return true;
        for (auto w : list) {
            if (w == v) return true;
        }
        return false;
    };
    std::vector<GridCase> cases;
    for (double a0 : kGridA0) {
        if (!keep(filter.a0, a0)) continue;
        for (long n : kGridN) {
            if (!keep(filter.n, n)) continue;
            for (double r : kGridR) {
                if (!keep(filter.r, r)) continue;
                for (int ae = kMinExp; ae <= kMaxExp; ++ae) {
                    for (int me = kMinExp; me <= kMaxExp; ++me) {
                        for (int rep = 1; rep <= kReplicates; ++rep) {
                            GridCase c{n, r, std::pow(10.0, ae), std::pow(10.0, me),
                                       a0, rep, 0};
                            c.seed = case_seed(master_seed, c);
                            cases.push_back(c);
                        }
                    }
                }
            }
        }
    }
    return cases;
}

CaseResult run_case(const GridCase& c, const AlgoConfig& cfg, const QuadConfig& qcfg) {
    CaseResult out{c, std::nullopt, std::nullopt, "ok"};
    try {
        RngState rng(c.seed);
        const std::vector<double> data = simulate_data(c, rng);
        const double mu = c.r * c.mu_true;
        const GammaParams prior(c.a0, c.a0);
        const SufficientStats stats = compute_stats(data, mu);
        const ApproxResult fit = approximate(stats, prior, cfg);
        out.approx = fit;
        const ShapePosterior post(stats, prior, mu);
        out.report = discrepancy(post, fit.params, qcfg);
    } catch (const std::exception& e) {
        out.status = sanitize(e.what());
    }
    return out;
}

std::vector<CaseResult> run_grid(std::uint64_t master_seed, const AlgoConfig& cfg,
                                 const QuadConfig& qcfg, const GridFilter& filter,
                                 int num_threads) {
    const std::vector<GridCase> cases = enumerate_grid(master_seed, filter);
    std::vector<CaseResult> results(cases.size());
    if (num_threads < 1) num_threads = 1;
    if (num_threads == 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            results[i] = run_case(cases[i], cfg, qcfg);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) break;
            results[i] = run_case(cases[i], cfg, qcfg);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

std::map<double, std::array<long, 5>> iteration_table(const std::vector<CaseResult>& results) {
    std::map<double, std::array<long, 5>> table;
    for (const auto& res : results) {
        if (res.status != "ok" || !res.approx) continue;
        auto& row = table.try_emplace(res.grid_case.a0, std::array<long, 5>{}).first->second;
        const int k = std::min(res.approx->iterations, 5);
        row[static_cast<std::size_t>(k - 1)] += 1;
    }
    return table;
}

std::vector<WorstCaseRow> worst_case(const std::vector<CaseResult>& results) {
    struct Acc {
        double tv = 0.0, kl_fg = 0.0, kl_gf = 0.0;
        long count = 0;
    };
    // combo key -> replicate-averaged metrics; then max per (a0, n)
    std::map<std::tuple<double, long, double, double, double>, Acc> combos;
    for (const auto& res : results) {
        if (res.status != "ok" || !res.report) continue;
        const auto& c = res.grid_case;
        Acc& acc = combos[{c.a0, c.n, c.r, c.a_true, c.mu_true}];
        acc.tv += res.report->tv;
        acc.kl_fg += res.report->kl_fg;
        acc.kl_gf += res.report->kl_gf;
        acc.count += 1;
    }
    std::map<std::pair<double, long>, WorstCaseRow> worst;
    for (const auto& [key, acc] : combos) {
        const double a0 = std::get<0>(key);
        const long n = std::get<1>(key);
        const double cnt = static_cast<double>(acc.count);
        WorstCaseRow& row =
            worst.try_emplace({a0, n}, WorstCaseRow{a0, n, 0.0, 0.0, 0.0}).first->second;
        row.tv = std::max(row.tv, acc.tv / cnt);
        row.kl_fg = std::max(row.kl_fg, acc.kl_fg / cnt);
        row.kl_gf = std::max(row.kl_gf, acc.kl_gf / cnt);
    }
    std::vector<WorstCaseRow> rows;
    rows.reserve(worst.size());
    for (const auto& [key, row] : worst) rows.push_back(row);
    return rows;
}

std::vector<CdfRow> cdf_dump(const GridCase& c, const AlgoConfig& cfg, const QuadConfig& qcfg,
                             int resolution) {
    if (resolution < 2) throw std::domain_error("cdf_dump: resolution must be >= 2");
    RngState rng(c.seed);
    const std::vector<double> data = simulate_data(c, rng);
    const double mu = c.r * c.mu_true;
    const GammaParams prior(c.a0, c.a0);
    const SufficientStats stats = compute_stats(data, mu);
    const ApproxResult fit = approximate(stats, prior, cfg);
    const ShapePosterior post(stats, prior, mu);

    const std::vector<double> nodes = quad_nodes(fit.params, qcfg);
    const std::size_t n = nodes.size();
    std::vector<double> w(n);
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = log_f(nodes[i], post) - gamma_log_pdf(nodes[i], fit.params);
        max_lw = std::max(max_lw, w[i]);
    }
    double total = 0.0;
    for (double& lw : w) {
        lw = std::exp(lw - max_lw);
        total += lw;
    }

    std::vector<CdfRow> rows;
    rows.reserve(static_cast<std::size_t>(resolution));
    double cum = 0.0;
    std::size_t pos = 0;
    for (int k = 0; k < resolution; ++k) {
        const std::size_t target =
            (static_cast<std::size_t>(k) + 1) * n / static_cast<std::size_t>(resolution) - 1;
        while (pos <= target) cum += w[pos++];
        const double a = nodes[target];
        // Midpoint rule: the node itself contributes half its weight to
        // the CDF at its own location.
        rows.push_back(CdfRow{a, (cum - 0.5 * w[target]) / total,
                              specfun::reg_lower_inc_gamma(fit.params.shape,
                                                           fit.params.rate * a)});
    }
    return rows;
}

std::string results_to_csv(const std::vector<CaseResult>& results) {
    std::string out =
        "a0,n,r,a_true,mu_true,replicate,seed,A,B,iterations,converged,residual,tv,kl_fg,kl_gf,status\n";
    for (const auto& res : results) {
        const auto& c = res.grid_case;
        out += fmt(c.a0) + ',' + std::to_string(c.n) + ',' + fmt(c.r) + ',' + fmt(c.a_true) +
               ',' + fmt(c.mu_true) + ',' + std::to_string(c.replicate) + ',' +
               std::to_string(c.seed) + ',';
        if (res.status == "ok" && res.approx && res.report) {
            out += fmt(res.approx->params.shape) + ',' + fmt(res.approx->params.rate) + ',' +
                   std::to_string(res.approx->iterations) + ',' +
                   (res.approx->converged ? "1" : "0") + ',' + fmt(res.approx->residual) + ',' +
                   fmt(res.report->tv) + ',' + fmt(res.report->kl_fg) + ',' +
                   fmt(res.report->kl_gf) + ',';
        } else {
            out += ",,,,,,,,";
        }
        out += res.status + '\n';
    }
    return out;
}

std::vector<CaseResult> results_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results_from_csv: empty input");
    std::vector<CaseResult> results;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() != 16) {
            throw std::runtime_error("results_from_csv: malformed row: " + line);
        }
        CaseResult res;
        res.grid_case = GridCase{std::stol(fields[1]), std::stod(fields[2]),
                                 std::stod(fields[3]), std::stod(fields[4]),
                                 std::stod(fields[0]), std::stoi(fields[5]),
                                 std::stoull(fields[6])};
        res.status = fields[15];
        if (res.status == "ok") {
            res.approx = ApproxResult{GammaParams(std::stod(fields[7]), std::stod(fields[8])),
                                      std::stoi(fields[9]), fields[10] == "1",
                                      std::stod(fields[11])};
            DiscrepancyReport rep{};
            rep.tv = std::stod(fields[12]);
            rep.kl_fg = std::stod(fields[13]);
            rep.kl_gf = std::stod(fields[14]);
            res.report = rep;
        }
        results.push_back(std::move(res));
    }
    return results;
}

std::string worst_case_to_csv(const std::vector<WorstCaseRow>& rows) {
    std::string out = "a0,n,tv,kl_fg,kl_gf\n";
    for (const auto& row : rows) {
        out += fmt(row.a0) + ',' + std::to_string(row.n) + ',' + fmt(row.tv) + ',' +
               fmt(row.kl_fg) + ',' + fmt(row.kl_gf) + '\n';
    }
    return out;
}

std::string cdf_to_csv(const std::vector<CdfRow>& rows) {
    std::string out = "a,true_cdf,approx_cdf\n";
    for (const auto& row : rows) {
        out += fmt(row.a) + ',' + fmt(row.true_cdf) + ',' + fmt(row.approx_cdf) + '\n';
    }
    return out;
}

std::string iteration_table_to_text(const std::map<double, std::array<long, 5>>& table) {
    std::string out = "k";
    for (const auto& [a0, counts] : table) out += ",a0=" + fmt(a0);
    out += '\n';
    static const char* labels[5] = {"1", "2", "3", "4", ">=5"};
    for (int k = 0; k < 5; ++k) {
        out += labels[k];
        for (const auto& [a0, counts] : table) {
            out += ',' + std::to_string(counts[static_cast<std::size_t>(k)]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace gshape
