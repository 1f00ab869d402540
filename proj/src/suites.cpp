#include "scanspectra/suites.hpp"

#include "scanspectra/parallel.hpp"
#include "scanspectra/spectral.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace scanspectra {

namespace {

Eigen::MatrixXd restricted_glauber(const std::vector<Eigen::MatrixXd>& site_matrices) {
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(site_matrices.front().rows(),
                                                 site_matrices.front().cols());
    for (const Eigen::MatrixXd& m : site_matrices) mean += m;
    mean /= static_cast<double>(site_matrices.size());
    return mean;
}

Eigen::MatrixXd ordered_product(const std::vector<Eigen::MatrixXd>& site_matrices,
                                const std::vector<int>& order) {
    Eigen::MatrixXd product = site_matrices[static_cast<std::size_t>(order.front())];
    for (std::size_t i = 1; i < order.size(); ++i)
        product = product * site_matrices[static_cast<std::size_t>(order[i])];
    return product;
}

void finish(SuiteOutcome& outcome) {
    for (const ResultRecord& record : outcome.results)
        if (record.pass.has_value() && !*record.pass) outcome.pass = false;
}

}  // namespace

std::vector<int> sample_permutation(int n, std::uint64_t seed, std::uint64_t stream) {
    Rng rng(seed, stream);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    return order;
}

SuiteOutcome suite_scan_gap(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    const int n = set.sites();
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    const double delta = 1.0 - spectral_norm_of(restricted_glauber(site_matrices));
    if (delta <= 0.0) throw std::invalid_argument("suite_scan_gap: no random-scan gap");
    const double bound = 1.0 - delta / (8.0 * (n + 1.0));

    std::vector<std::vector<int>> orders;
    if (n <= opts.exhaustive_max_sites) {
        orders = all_permutations(n);
    } else {
        orders.reserve(static_cast<std::size_t>(opts.sampled_perms));
        for (int i = 0; i < opts.sampled_perms; ++i)
            orders.push_back(sample_permutation(n, opts.seed, static_cast<std::uint64_t>(i)));
    }

    SuiteOutcome outcome;
    outcome.results.resize(orders.size());
    parallel_for(0, static_cast<long>(orders.size()), [&](long i) {
        const std::vector<int>& order = orders[static_cast<std::size_t>(i)];
        const double norm = spectral_norm_of(ordered_product(site_matrices, order));
        SpectralReport report;
        report.name = "scan gap bound, order " +
                      sequence_to_string(UpdateSequence{order, n});
        report.operator_norm = norm;
        report.gap = 1.0 - norm;
        report.bound_value = bound;
        report.attained = norm;
        report.residual = bound - norm;
        report.pass = norm <= bound + opts.tol;
        report.details["delta"] = delta;
        outcome.results[static_cast<std::size_t>(i)] = to_record(report);
    });
    finish(outcome);
    return outcome;
}

SuiteOutcome suite_sequence_bound(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    const int n = set.sites();
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    const double delta = 1.0 - spectral_norm_of(restricted_glauber(site_matrices));
    if (delta <= 0.0) throw std::invalid_argument("suite_sequence_bound: no random-scan gap");

    SuiteOutcome outcome;
    outcome.results.resize(static_cast<std::size_t>(opts.trials));
    parallel_for(0, opts.trials, [&](long trial) {
        const UpdateSequence seq =
            sample_covering_sequence(n, opts.seed, static_cast<std::uint64_t>(trial));
        const FirstAppearanceStats stats = first_appearances(seq);
        const double norm = spectral_norm_of(ordered_product(site_matrices, seq.indices));
        SpectralReport report;
        report.name = "covering-sequence bound, trial " + std::to_string(trial) +
                      ", L=" + std::to_string(stats.cover_time);
        report.operator_norm = norm;
        report.gap = 1.0 - norm;
        report.bound_value = 1.0 - n * delta / (8.0 * static_cast<double>(stats.sum_k));
        report.attained = norm * norm;
        report.residual = report.bound_value - report.attained;
        report.pass = report.attained <= report.bound_value + opts.tol;
        report.details["delta"] = delta;
        report.details["sum_k"] = static_cast<double>(stats.sum_k);
        outcome.results[static_cast<std::size_t>(trial)] = to_record(report);
    });
    finish(outcome);
    return outcome;
}

SuiteOutcome suite_supersequence_bound(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    const int n = set.sites();
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    std::vector<int> identity_order(static_cast<std::size_t>(n));
    std::iota(identity_order.begin(), identity_order.end(), 0);
    const double delta_scan =
        1.0 - spectral_norm_of(ordered_product(site_matrices, identity_order));
    if (delta_scan <= 0.0)
        throw std::invalid_argument("suite_supersequence_bound: identity scan has no gap");

    SuiteOutcome outcome;
    outcome.results.resize(static_cast<std::size_t>(opts.trials));
    parallel_for(0, opts.trials, [&](long trial) {
        // A random covering sequence, relabeled so sites first appear in
        // identity order: a random supersequence of the identity scan.
        UpdateSequence seq = sample_covering_sequence(
            n, opts.seed, (1ULL << 32) + static_cast<std::uint64_t>(trial));
        const FirstAppearanceStats stats = first_appearances(seq);
        std::vector<int> relabel(static_cast<std::size_t>(n), -1);
        for (std::size_t j = 0; j < stats.appearance_order.size(); ++j)
            relabel[static_cast<std::size_t>(stats.appearance_order[j])] = static_cast<int>(j);
        for (int& idx : seq.indices) idx = relabel[static_cast<std::size_t>(idx)];

        const long length = stats.cover_time;
        const double norm = spectral_norm_of(ordered_product(site_matrices, seq.indices));
        SpectralReport report;
        report.name = "supersequence bound, trial " + std::to_string(trial) +
                      ", L=" + std::to_string(length);
        report.operator_norm = norm;
        report.gap = 1.0 - norm;
        report.bound_value =
            1.0 - delta_scan * delta_scan / (8.0 * (static_cast<double>(length) - n + 1.0));
        report.attained = norm;
        report.residual = report.bound_value - report.attained;
        report.pass = report.attained <= report.bound_value + opts.tol;
        report.details["delta_scan"] = delta_scan;
        report.details["cover_time"] = static_cast<double>(length);
        outcome.results[static_cast<std::size_t>(trial)] = to_record(report);
    });
    finish(outcome);
    return outcome;
}

SuiteOutcome suite_laplacian_sandwich(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    SuiteOutcome outcome;
    outcome.results.push_back(to_record(laplacian_comparison(set, opts.tol)));
    finish(outcome);
    return outcome;
}

SuiteOutcome suite_converse_power(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    SuiteOutcome outcome;
    outcome.results.push_back(to_record(converse_power_check(set, opts.tol)));
    outcome.results.push_back(to_record(converse_single_scan_check(set, opts.converse_c, opts.tol)));
    finish(outcome);
    return outcome;
}

SuiteOutcome suite_mixing_sandwich(const Distribution& model, const SuiteOptions& opts) {
    const SiteKernelSet set(model);
    const MarkovKernel glauber = glauber_kernel(set);
    std::vector<int> identity_order(static_cast<std::size_t>(set.sites()));
    std::iota(identity_order.begin(), identity_order.end(), 0);
    const MarkovKernel scan = sequence_product_kernel(set, identity_order);

    SuiteOutcome outcome;
    for (double eps : opts.eps_values) {
        std::ostringstream eps_text;
        eps_text << eps;
        outcome.results.push_back(to_record("random scan mixing, eps=" + eps_text.str(),
                                            mixing_report(glauber, eps), /*check_upper=*/true,
                                            /*check_lower=*/true));
        outcome.results.push_back(to_record("systematic scan mixing, eps=" + eps_text.str(),
                                            mixing_report(scan, eps), /*check_upper=*/true,
                                            /*check_lower=*/false));
    }
    finish(outcome);
    return outcome;
}

SuiteOutcome run_suite(const std::string& suite, const Distribution& model,
                       const SuiteOptions& opts) {
    if (suite == "cor32") return suite_scan_gap(model, opts);
    if (suite == "thm31") return suite_sequence_bound(model, opts);
    if (suite == "thm36") return suite_supersequence_bound(model, opts);
    if (suite == "lemma27") return suite_laplacian_sandwich(model, opts);
    if (suite == "thm35") return suite_converse_power(model, opts);
    if (suite == "thm25") return suite_mixing_sandwich(model, opts);
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (cor32|thm31|thm36|lemma27|thm35|thm25)");
}

std::vector<std::string> suite_names() {
    return {"cor32", "thm31", "thm36", "lemma27", "thm35", "thm25"};
}

std::vector<std::pair<std::string, Distribution>> standard_test_models() {
    std::vector<std::pair<std::string, Distribution>> models;
    for (int n = 2; n <= 6; ++n) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            std::ostringstream name;
            name << "hardcore:complete:n=" << n << ",lambda=" << lambda;
            models.emplace_back(name.str(), build_hardcore(complete_graph(n), lambda));
        }
    }
    for (const char* graph_name : {"path", "cycle"}) {
        for (int n = 3; n <= 6; ++n) {
            const GraphSpec graph =
                std::string(graph_name) == "path" ? path_graph(n) : cycle_graph(n);
            for (double beta : {-1.0, 0.0, 0.5, 1.0}) {
                for (double h : {0.0, 0.3}) {
                    std::ostringstream name;
                    name << "ising:" << graph_name << ":n=" << n << ",beta=" << beta << ",h=" << h;
                    models.emplace_back(name.str(), build_ising(graph, beta, h));
                }
            }
        }
    }
    return models;
}

}  // namespace scanspectra
