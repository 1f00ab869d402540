#include "scanspectra/hardcore_sim.hpp"

#include "scanspectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

namespace scanspectra {

namespace {

std::vector<Index> compact_support(int n) {
    std::vector<Index> support(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) support[static_cast<std::size_t>(i)] = i;
    return support;
}

Eigen::VectorXd compact_pi(int n) {
    return Eigen::VectorXd::Constant(n + 1, 1.0 / (n + 1.0));
}

void check_n(int n) {
    if (n < 1) throw std::invalid_argument("hardcore chain: n must be >= 1");
    if (n + 1 > ProductSpace::kDefaultStateCap)
        throw std::invalid_argument("hardcore chain: n exceeds the state cap");
}

// Least-squares slope of log(t) against log(n).
double log_log_slope(const std::vector<SeparationRow>& rows, bool scan) {
    const std::size_t count = rows.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const SeparationRow& row : rows) {
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(static_cast<double>(scan ? row.t_ss_sweeps : row.t_gd_steps));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (count * sxy - sx * sy) / denom;
}

}  // namespace

MarkovKernel compact_site_kernel(int n, int site) {
    check_n(n);
    if (site < 0 || site >= n)
        throw std::invalid_argument("compact_site_kernel: site out of range");
    Eigen::MatrixXd matrix = Eigen::MatrixXd::Identity(n + 1, n + 1);
    const int occupied = site + 1;
    matrix(0, 0) = 0.5;
    matrix(0, occupied) = 0.5;
    matrix(occupied, 0) = 0.5;
    matrix(occupied, occupied) = 0.5;
    return MarkovKernel::make(std::move(matrix), compact_pi(n), compact_support(n),
                              "site " + std::to_string(site), KernelKind::kSite, n);
}

MarkovKernel compact_glauber_kernel(int n) {
    check_n(n);
    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(n + 1, n + 1);
    matrix(0, 0) = 0.5;
    for (int i = 1; i <= n; ++i) {
        matrix(0, i) = 0.5 / n;
        matrix(i, 0) = 0.5 / n;
        matrix(i, i) = 1.0 - 0.5 / n;
    }
    return MarkovKernel::make(std::move(matrix), compact_pi(n), compact_support(n), "glauber",
                              KernelKind::kGlauber, n);
}

MarkovKernel compact_scan_kernel(int n) {
    check_n(n);
    Eigen::MatrixXd product = compact_site_kernel(n, 0).matrix();
    for (int site = 1; site < n; ++site) product = product * compact_site_kernel(n, site).matrix();
    return MarkovKernel::make(std::move(product), compact_pi(n), compact_support(n),
                              "scan [0.." + std::to_string(n) + ")", KernelKind::kSequence, n);
}

int hardcore_scan_step(int state, int site, Rng& rng) {
    const int occupied = site + 1;
    if (state == 0 || state == occupied) return rng.coin() ? occupied : 0;
    return state;
}

TrajectoryStats simulate_scan(int n, long sweeps, std::uint64_t seed, HardcoreState start,
                              std::uint64_t stream) {
    check_n(n);
    if (sweeps < 0) throw std::invalid_argument("simulate_scan: sweeps must be >= 0");
    if (start.value == -1) start.value = n;  // default start: e_n
    if (start.value < 0 || start.value > n)
        throw std::invalid_argument("simulate_scan: start state out of range");

    TrajectoryStats stats;
    stats.n = n;
    stats.total_updates = sweeps * static_cast<long>(n);
    stats.seed = seed;
    stats.stream = stream;
    // A full drop/rise excursion takes at least n+1 updates.
    const std::size_t record_cap = static_cast<std::size_t>(stats.total_updates / (n + 1)) + 2;

    Rng rng(seed, stream);
    int state = start.value;
    bool seeking_drop = true;
    for (long t = 1; t <= stats.total_updates; ++t) {
        const int site = static_cast<int>((t - 1) % n);
        state = hardcore_scan_step(state, site, rng);
        if (seeking_drop && state == 0) {
            if (stats.tau.size() >= record_cap)
                throw std::runtime_error("simulate_scan: stopping-time buffer overflow");
            stats.tau.push_back(t);
            seeking_drop = false;
        } else if (!seeking_drop && state != 0) {
            stats.nu.push_back(t);
            seeking_drop = true;
        }
    }
    stats.final_state = state;
    return stats;
}

namespace {

// Horizon in sweeps under which a trajectory misses nu_s only with
// negligible probability (the excursion times are sums of geometrics).
long moment_horizon_sweeps(int n, int s) {
    return 16L * s + 16L + (16L * s) / n;
}

std::vector<long> collect_nu_s(int n, int s, int trials, std::uint64_t seed) {
    const long sweeps = moment_horizon_sweeps(n, s);
    std::vector<long> values;
    values.reserve(static_cast<std::size_t>(trials));
    int missed = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const TrajectoryStats stats =
            simulate_scan(n, sweeps, seed, HardcoreState{-1}, static_cast<std::uint64_t>(trial));
        if (static_cast<int>(stats.nu.size()) < s) {
            ++missed;
            continue;
        }
        values.push_back(stats.nu[static_cast<std::size_t>(s) - 1]);
    }
    if (missed > 0)
        throw std::runtime_error("insufficient trajectories reaching the requested excursion: " +
                                 std::to_string(missed) + " of " + std::to_string(trials) +
                                 " missed it within the horizon");
    return values;
}

}  // namespace

NuMomentCheck nu_moment_check(int n, int s, int trials, std::uint64_t seed) {
    check_n(n);
    if (s < 1) throw std::invalid_argument("nu_moment_check: s must be >= 1");
    if (trials < 100) throw std::invalid_argument("nu_moment_check: need at least 100 trials");
    const std::vector<long> values = collect_nu_s(n, s, trials, seed);

    NuMomentCheck check;
    check.n = n;
    check.s = s;
    check.trials = trials;
    double sum = 0.0;
    for (long v : values) sum += static_cast<double>(v);
    check.sample_mean = sum / trials;
    double ssq = 0.0;
    for (long v : values) {
        const double d = static_cast<double>(v) - check.sample_mean;
        ssq += d * d;
    }
    check.sample_variance = ssq / (trials - 1);

    check.expected_mean = 2.0 * (n + 1.0) * s;
    check.expected_variance = 2.0 * (static_cast<double>(n) * n + 1.0) * s;
    const double se_mean = std::sqrt(check.sample_variance / trials);
    check.mean_tolerance = 3.0 * se_mean;
    check.mean_pass = std::abs(check.sample_mean - check.expected_mean) <= check.mean_tolerance;
    const double se_var = check.sample_variance * std::sqrt(2.0 / (trials - 1.0));
    check.variance_tolerance = 0.10 * check.expected_variance + 3.0 * se_var;
    check.variance_pass =
        std::abs(check.sample_variance - check.expected_variance) <= check.variance_tolerance;
    check.pass = check.mean_pass && check.variance_pass;
    return check;
}

Eigen::VectorXd geom_sum_residue_law(int n, int s) {
    if (n < 1 || s < 1) throw std::invalid_argument("geom_sum_residue_law: need n >= 1, s >= 1");
    // Law of one Geom(1/2) mod n: residue r in {1..n} collects mass
    // sum_j 2^{-(r + j n)} = 2^{-r} / (1 - 2^{-n}).
    Eigen::VectorXd single = Eigen::VectorXd::Zero(n);
    const double denom = 1.0 - std::pow(0.5, n);
    for (int r = 1; r <= n; ++r) single(r % n) += std::pow(0.5, r) / denom;
    Eigen::VectorXd law = single;
    for (int fold = 2; fold <= s; ++fold) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) next((a + b) % n) += law(a) * single(b);
        law = next;
    }
    return law;
}

ResidueCheck decomposition_check(int n, int s, int trials, std::uint64_t seed) {
    check_n(n);
    if (s < 1) throw std::invalid_argument("decomposition_check: s must be >= 1");
    if (trials < 100) throw std::invalid_argument("decomposition_check: need at least 100 trials");
    const std::vector<long> values = collect_nu_s(n, s, trials, seed);

    ResidueCheck check;
    check.n = n;
    check.s = s;
    check.used_trials = static_cast<int>(values.size());
    check.empirical = Eigen::VectorXd::Zero(n);
    for (long v : values) check.empirical(static_cast<int>(v % n)) += 1.0 / values.size();

    // Synthetic residues from i.i.d. geometric sums, on disjoint streams.
    check.synthetic = Eigen::VectorXd::Zero(n);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(seed, (1ULL << 40) + static_cast<std::uint64_t>(trial));
        long total = 0;
        for (int i = 0; i < s; ++i) total += rng.geometric_half();
        check.synthetic(static_cast<int>(total % n)) += 1.0 / trials;
    }
    check.tv = tv_distance(check.empirical, check.synthetic);
    check.pass = check.tv <= check.tv_limit;
    return check;
}

ConcentrationCheck concentration_check(int n, int trials, std::uint64_t seed, double c_prime) {
    if (n < 16)
        throw std::invalid_argument("concentration_check: n must be >= 16 (asymptotic statement)");
    if (trials < 100) throw std::invalid_argument("concentration_check: need at least 100 trials");
    if (!(c_prime > 0.0)) throw std::invalid_argument("concentration_check: c' must be positive");

    ConcentrationCheck check;
    check.n = n;
    check.c_prime = c_prime;
    // Two-sweep floor: one sweep cannot contain a full drop/rise excursion.
    check.horizon_sweeps = std::max(2L, std::lround(c_prime * n * n));

    std::vector<long> counts(static_cast<std::size_t>(n), 0);
    long used = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const TrajectoryStats stats = simulate_scan(n, check.horizon_sweeps, seed, HardcoreState{-1},
                                                    static_cast<std::uint64_t>(trial));
        if (stats.nu.empty()) continue;
        ++used;
        ++counts[static_cast<std::size_t>(stats.nu.back() % n)];
    }
    if (used == 0)
        throw std::runtime_error("concentration_check: no trajectory left the empty state");
    check.used_trials = static_cast<int>(used);
    check.residue_law = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < n; ++r) check.residue_law(r) = static_cast<double>(counts[r]) / used;

    std::vector<double> sorted(check.residue_law.data(), check.residue_law.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double mass = 0.0;
    int size = 0;
    while (mass < 0.75 && size < n) {
        mass += sorted[static_cast<std::size_t>(size)];
        ++size;
    }
    check.set_size = size;
    check.captured_mass = mass;
    check.max_allowed = n / 4 - 1;
    check.pass = mass >= 0.75 && check.set_size <= check.max_allowed;
    return check;
}

double geom_pair_tail(int n, long t) {
    check_n(n);
    if (t < 0) throw std::invalid_argument("geom_pair_tail: t must be >= 0");
    if (t <= 1) return 1.0;  // U + V >= 2 always
    const double p = 1.0 / (2.0 * n);
    double reach = 0.0;  // Pr(U + V <= t)
    double pu = p;       // Pr(U = u), u = 1
    for (long u = 1; u <= t - 1; ++u) {
        const double v_cdf = 1.0 - std::pow(0.5, static_cast<double>(t - u));
        reach += pu * v_cdf;
        pu *= 1.0 - p;
    }
    return 1.0 - reach;
}

TailBoundCheck glauber_tail_check(int n, long t_max) {
    check_n(n);
    const MixingCurve curve = mixing_curve(compact_glauber_kernel(n), t_max);
    TailBoundCheck check;
    check.n = n;
    check.t_max = t_max;
    check.max_violation = -std::numeric_limits<double>::infinity();
    for (long t = 0; t <= t_max; ++t) {
        const double violation =
            curve.d_values[static_cast<std::size_t>(t)] - geom_pair_tail(n, t);
        check.max_violation = std::max(check.max_violation, violation);
    }
    check.pass = check.max_violation <= 1e-12;
    return check;
}

SeparationTable separation_experiment(const std::vector<int>& n_list, double eps) {
    if (n_list.empty()) throw std::invalid_argument("separation_experiment: empty n list");
    SeparationTable table;
    table.eps = eps;
    for (int n : n_list) {
        const MarkovKernel glauber = compact_glauber_kernel(n);
        const MarkovKernel scan = compact_scan_kernel(n);
        const MixingReport gd = mixing_report(glauber, eps);
        const MixingReport ss = mixing_report(scan, eps);
        if (gd.exceeded || ss.exceeded)
            throw std::runtime_error("separation_experiment: mixing time exceeded horizon at n=" +
                                     std::to_string(n));
        SeparationRow row;
        row.n = n;
        row.t_gd_steps = gd.t_mix;
        row.t_ss_sweeps = ss.t_mix;
        row.ratio = static_cast<double>(row.t_ss_sweeps) / static_cast<double>(row.t_gd_steps);
        const double sweep_bound =
            8.0 * (n + 1.0) / gd.gamma * std::log(1.0 / (eps * gd.pi_min)) + 1.0;
        row.bound_check = static_cast<double>(row.t_ss_sweeps) <= sweep_bound;
        table.rows.push_back(row);
    }
    if (table.rows.size() >= 2) {
        table.slope_gd = log_log_slope(table.rows, /*scan=*/false);
        table.slope_ss = log_log_slope(table.rows, /*scan=*/true);
    }
    return table;
}

void write_separation_csv(const SeparationTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write separation CSV: " + path);
    out << "n,t_gd_steps,t_ss_sweeps,ratio,bound_check\n";
    out.precision(17);
    for (const SeparationRow& row : table.rows)
        out << row.n << ',' << row.t_gd_steps << ',' << row.t_ss_sweeps << ',' << row.ratio << ','
            << (row.bound_check ? 1 : 0) << '\n';
}

}  // namespace scanspectra
