#pragma once

#include "scanspectra/mixing.hpp"
#include "scanspectra/operators.hpp"
#include "scanspectra/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace scanspectra {

// Hardcore model on the complete graph at fugacity 1: the stationary law is
// uniform on the n+1 states {empty, e_1, ..., e_n}. This module works on that
// compact chain directly (integer state, O(1) per site update), which reaches
// n in the hundreds where the asymptotics are visible. For n <= 6 the compact
// kernels agree entrywise with the general construction on the full 2^n space
// restricted to the support (tested).
struct HardcoreState {
    int value = 0;  // 0 = empty set, i = basis vector e_i (1-indexed)
};

// One-sweep scan updates sites 0, 1, ..., n-1 chronologically; compact state
// i corresponds to e_i, i.e. site i-1 occupied.
MarkovKernel compact_site_kernel(int n, int site);
MarkovKernel compact_glauber_kernel(int n);
MarkovKernel compact_scan_kernel(int n);

// Single site update: if the state is empty or occupies `site`, resample
// uniformly between those two; otherwise nothing changes.
int hardcore_scan_step(int state, int site, Rng& rng);

// Alternating stopping times along a scan trajectory: tau_s is the s-th time
// the configuration drops to empty, nu_s the first time after tau_s it leaves
// empty again. Times count site updates, starting at 1.
struct TrajectoryStats {
    int n = 0;
    long total_updates = 0;
    std::vector<long> tau;
    std::vector<long> nu;
    int final_state = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

TrajectoryStats simulate_scan(int n, long sweeps, std::uint64_t seed,
                              HardcoreState start = HardcoreState{-1},
                              std::uint64_t stream = 0);

// Sample-moment test of the excursion time nu_s against the exact values
// E[nu_s] = 2(n+1)s and Var(nu_s) = 2(n^2+1)s.
struct NuMomentCheck {
    int n = 0;
    int s = 0;
    int trials = 0;
    double sample_mean = 0.0;
    double expected_mean = 0.0;
    double mean_tolerance = 0.0;  // 3 standard errors
    bool mean_pass = false;
    double sample_variance = 0.0;
    double expected_variance = 0.0;
    double variance_tolerance = 0.0;  // 10% + 3 standard errors
    bool variance_pass = false;
    bool pass = false;
};

NuMomentCheck nu_moment_check(int n, int s, int trials, std::uint64_t seed);

// nu_s decomposes as n * (sum of s Geom(1/2)) + (sum of s Geom(1/2)), so its
// residue mod n has the law of a Geom(1/2) s-fold sum mod n. Compares the
// empirical residue histogram from simulation against one synthesized from
// i.i.d. geometric sums, in total variation.
struct ResidueCheck {
    int n = 0;
    int s = 0;
    int used_trials = 0;
    Eigen::VectorXd empirical;  // histogram over residues 0..n-1
    Eigen::VectorXd synthetic;
    double tv = 0.0;
    double tv_limit = 0.05;
    bool pass = false;
};

ResidueCheck decomposition_check(int n, int s, int trials, std::uint64_t seed);

// Exact law of (sum of s independent Geom(1/2)) mod n, by folding the
// geometric tail onto Z_n and convolving.
Eigen::VectorXd geom_sum_residue_law(int n, int s);

// Concentration of nu_{s*} mod n at horizon c' n^2 sweeps (with a two-sweep
// floor, since one sweep cannot contain a full excursion), where s* indexes
// the last excursion inside the horizon: finds the smallest residue set A
// capturing 3/4 of the empirical mass and checks |A| <= n/4 - 1. Holds for
// small enough c'; large c' is the mixed regime and the check is expected to
// fail there. The default c' = 0.004 was chosen empirically.
struct ConcentrationCheck {
    int n = 0;
    int used_trials = 0;
    double c_prime = 0.0;
    long horizon_sweeps = 0;
    Eigen::VectorXd residue_law;
    int set_size = 0;
    int max_allowed = 0;  // n/4 - 1
    double captured_mass = 0.0;
    bool pass = false;
};

ConcentrationCheck concentration_check(int n, int trials, std::uint64_t seed,
                                       double c_prime = 0.004);

// Exact tail Pr(U + V > t) with U ~ Geom(1/(2n)), V ~ Geom(1/2), both on
// {1, 2, ...}; dominates the random-scan distance d(t) for this model.
double geom_pair_tail(int n, long t);

struct TailBoundCheck {
    int n = 0;
    long t_max = 0;
    double max_violation = 0.0;  // max over t of d(t) - Pr(U+V > t)
    bool pass = false;
};

TailBoundCheck glauber_tail_check(int n, long t_max);

// Exact mixing-time separation between the random scan (site steps) and the
// systematic scan (sweeps) across a list of n, with log-log slope fits.
struct SeparationRow {
    int n = 0;
    long t_gd_steps = 0;
    long t_ss_sweeps = 0;
    double ratio = 0.0;       // t_ss_sweeps / t_gd_steps
    bool bound_check = false; // t_ss <= (8(n+1)/gamma_GD) log(1/(eps pi_min)) + 1
};

struct SeparationTable {
    double eps = 0.25;
    std::vector<SeparationRow> rows;
    double slope_gd = 0.0;  // log-log slope of t_gd vs n
    double slope_ss = 0.0;  // log-log slope of t_ss vs n
};

SeparationTable separation_experiment(const std::vector<int>& n_list, double eps);
void write_separation_csv(const SeparationTable& table, const std::string& path);

}  // namespace scanspectra
