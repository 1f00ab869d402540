#include "scanspectra/hardcore_sim.hpp"
#include "scanspectra/models.hpp"
#include "scanspectra/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

namespace {

using namespace scanspectra;

std::vector<int> iota_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

}  // namespace

TEST_CASE("compact kernels match the general construction on the full space") {
    for (int n = 1; n <= 6; ++n) {
        const Distribution dist = build_hardcore(complete_graph(n), 1.0);
        const SiteKernelSet set(dist);
        // Support of the full space lists the empty set first, then e_1 < e_2
        // < ... by index order, matching the compact labels.
        for (int site = 0; site < n; ++site)
            CHECK((compact_site_kernel(n, site).matrix() - set.kernel(site).matrix())
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
        CHECK((compact_glauber_kernel(n).matrix() - glauber_kernel(set).matrix())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
        if (n >= 2)
            CHECK((compact_scan_kernel(n).matrix() -
                   sequence_product_kernel(set, iota_order(n)).matrix())
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
    }
}

TEST_CASE("single update rule") {
    Rng rng(5);
    // From a mismatched occupied state nothing changes.
    CHECK(hardcore_scan_step(3, 0, rng) == 3);
    // From the empty state, the first update excites with probability 1/2.
    int excited = 0;
    const int trials = 20000;
    for (int trial = 0; trial < trials; ++trial) {
        Rng local(77, static_cast<std::uint64_t>(trial));
        if (hardcore_scan_step(0, 4, local) != 0) ++excited;
    }
    const double rate = static_cast<double>(excited) / trials;
    CHECK(std::abs(rate - 0.5) <= 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("drop time for a single site is geometric with mean 2") {
    const int trials = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const TrajectoryStats stats =
            simulate_scan(1, 200, 11, HardcoreState{-1}, static_cast<std::uint64_t>(trial));
        REQUIRE_FALSE(stats.tau.empty());
        sum += static_cast<double>(stats.tau.front());
        sum_sq += static_cast<double>(stats.tau.front()) * static_cast<double>(stats.tau.front());
    }
    const double mean = sum / trials;
    const double variance = (sum_sq - trials * mean * mean) / (trials - 1);
    CHECK(std::abs(mean - 2.0) <= 3.0 * std::sqrt(variance / trials));
}

TEST_CASE("trajectories are deterministic per (seed, stream)") {
    const TrajectoryStats a = simulate_scan(5, 100, 42, HardcoreState{-1}, 3);
    const TrajectoryStats b = simulate_scan(5, 100, 42, HardcoreState{-1}, 3);
    CHECK(a.tau == b.tau);
    CHECK(a.nu == b.nu);
    CHECK(a.final_state == b.final_state);
    const TrajectoryStats c = simulate_scan(5, 100, 43, HardcoreState{-1}, 3);
    CHECK((a.tau != c.tau || a.nu != c.nu || a.final_state != c.final_state));
}

TEST_CASE("stopping times strictly interleave") {
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
        const TrajectoryStats stats = simulate_scan(6, 200, 9, HardcoreState{-1}, stream);
        REQUIRE(stats.nu.size() <= stats.tau.size());
        for (std::size_t s = 0; s < stats.nu.size(); ++s) {
            CHECK(stats.tau[s] < stats.nu[s]);
            if (s + 1 < stats.tau.size()) CHECK(stats.nu[s] < stats.tau[s + 1]);
        }
        CHECK((stats.tau.empty() || stats.tau.back() <= stats.total_updates));
    }
}

TEST_CASE("drops only happen at the matching site position") {
    // tau mod n identifies the site that cleared; after a drop at position p,
    // the next drop is a full cycle later, so tau_{s+1} - nu_s is a positive
    // multiple of n.
    const int n = 7;
    const TrajectoryStats stats = simulate_scan(n, 400, 13, HardcoreState{-1}, 1);
    for (std::size_t s = 0; s + 1 < stats.nu.size(); ++s)
        CHECK((stats.tau[s + 1] - stats.nu[s]) % n == 0);
}

TEST_CASE("excursion moments at small n") {
    const NuMomentCheck tiny = nu_moment_check(1, 1, 2000, 7);
    CHECK(tiny.expected_mean == 4.0);  // two independent mean-2 geometrics
    CHECK(tiny.pass);
    CHECK_THROWS_AS(nu_moment_check(1, 1, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(nu_moment_check(1, 0, 2000, 7), std::invalid_argument);
}

TEST_CASE("excursion moments at n=32, s=10") {
    const NuMomentCheck check = nu_moment_check(32, 10, 1000, kDefaultSeed);
    CHECK(check.expected_mean == 660.0);
    CHECK(check.expected_variance == 20500.0);
    CHECK(check.mean_pass);
    CHECK(check.variance_pass);
}

TEST_CASE("exact residue law of geometric sums") {
    const Eigen::VectorXd law = geom_sum_residue_law(2, 1);
    CHECK(law(0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(law(1) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(geom_sum_residue_law(1, 3)(0) == doctest::Approx(1.0).epsilon(1e-12));
    // Law sums to one for several (n, s).
    for (int n : {2, 3, 5, 8})
        for (int s : {1, 2, 5})
            CHECK(geom_sum_residue_law(n, s).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("excursion residues match the geometric-sum synthesis") {
    const ResidueCheck check = decomposition_check(2, 1, 4000, kDefaultSeed);
    CHECK(check.pass);
    // Both histograms track the exact law (1/3, 2/3).
    const Eigen::VectorXd law = geom_sum_residue_law(2, 1);
    CHECK(tv_distance(check.empirical, law) <= 0.05);
    CHECK(tv_distance(check.synthetic, law) <= 0.05);

    // Negative control: a uniform histogram is detectably wrong.
    Eigen::VectorXd uniform = Eigen::VectorXd::Constant(2, 0.5);
    CHECK(tv_distance(check.empirical, uniform) > 0.05);

    // Degenerate case: all residues are zero when n = 1.
    const ResidueCheck trivial = decomposition_check(1, 2, 500, 3);
    CHECK(trivial.tv <= 1e-12);
}

TEST_CASE("residue concentration inside the horizon") {
    const ConcentrationCheck check = concentration_check(64, 2000, kDefaultSeed);
    CHECK(check.pass);
    CHECK(check.set_size <= check.max_allowed);
    CHECK(check.captured_mass >= 0.75);

    // Long-horizon negative control: the chain has mixed and residues are
    // near uniform, so no small set captures 3/4 of the mass.
    const ConcentrationCheck mixed = concentration_check(16, 1000, kDefaultSeed, 10.0);
    CHECK_FALSE(mixed.pass);

    CHECK_THROWS_AS(concentration_check(15, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(concentration_check(64, 10, 1), std::invalid_argument);
}

TEST_CASE("exact geometric pair tail") {
    CHECK(geom_pair_tail(4, 0) == 1.0);
    CHECK(geom_pair_tail(4, 1) == 1.0);
    // Independent oracle: truncated double sum over the joint law.
    for (int n : {2, 4, 16}) {
        const double p = 1.0 / (2.0 * n);
        for (long t : {2L, 3L, 10L, 50L}) {
            double tail = 0.0;
            for (long u = 1; u <= 4000; ++u) {
                const double pu = p * std::pow(1.0 - p, static_cast<double>(u - 1));
                for (long v = 1; v <= 200; ++v) {
                    const double pv = std::pow(0.5, static_cast<double>(v));
                    if (u + v > t) tail += pu * pv;
                }
            }
            CHECK(geom_pair_tail(n, t) == doctest::Approx(tail).epsilon(1e-10));
        }
    }
}

TEST_CASE("geometric tail dominates the exact random-scan distance") {
    for (int n : {4, 16}) {
        const TailBoundCheck check = glauber_tail_check(n, 200);
        CHECK(check.pass);
        CHECK(check.max_violation <= 1e-12);
    }
}

TEST_CASE("separation experiment rows and regression pins") {
    const SeparationTable table = separation_experiment({2}, 0.25);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].t_gd_steps == 3);
    CHECK(table.rows[0].t_ss_sweeps == 2);
    CHECK(table.rows[0].bound_check);
    CHECK_THROWS_AS(separation_experiment({}, 0.25), std::invalid_argument);
}

TEST_CASE("separation experiment slopes over a quadratic-regime window") {
    // In the regime where the residue diffusion dominates, sweep counts grow
    // quadratically while site-step counts grow linearly.
    const SeparationTable table = separation_experiment({16, 32, 64}, 0.25);
    CHECK(table.slope_gd == doctest::Approx(1.0).epsilon(0.15));
    CHECK(table.slope_ss > 1.5);
    for (const SeparationRow& row : table.rows) CHECK(row.bound_check);
}
