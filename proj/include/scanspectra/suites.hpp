#pragma once

#include "scanspectra/models.hpp"
#include "scanspectra/report.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scanspectra {

// Verification suites runnable against any model, shared by the command-line
// tool and the acceptance harness. Suite ids match the CLI surface.
struct SuiteOptions {
    std::uint64_t seed = kDefaultSeed;
    int trials = 200;          // sequences per model for the sequence suites
    int sampled_perms = 20;    // sampled permutations when exhaustive is too many
    int exhaustive_max_sites = 5;
    double tol = kVerifyTol;
    std::vector<double> eps_values = {0.25, 0.05};
    double converse_c = 10.0;  // constant for the single-scan converse check
};

struct SuiteOutcome {
    std::vector<ResultRecord> results;
    bool pass = true;
};

// Scan-gap comparison over permutations (exhaustive up to
// exhaustive_max_sites sites, sampled beyond).
SuiteOutcome suite_scan_gap(const Distribution& model, const SuiteOptions& opts);

// Random covering sequences against the covering-sequence squared-norm bound.
SuiteOutcome suite_sequence_bound(const Distribution& model, const SuiteOptions& opts);

// Random supersequences of the identity scan against the supersequence bound.
SuiteOutcome suite_supersequence_bound(const Distribution& model, const SuiteOptions& opts);

// Gap / Laplacian singular value sandwich for the identity scan.
SuiteOutcome suite_laplacian_sandwich(const Distribution& model, const SuiteOptions& opts);

// Converse power checks (all-scans and single-scan forms; needs <= 5 sites).
SuiteOutcome suite_converse_power(const Distribution& model, const SuiteOptions& opts);

// Exact mixing times against the spectral upper bound (and the reversible
// lower bound for the random scan), per epsilon.
SuiteOutcome suite_mixing_sandwich(const Distribution& model, const SuiteOptions& opts);

// Dispatch by suite id: cor32 | thm31 | thm36 | lemma27 | thm35 | thm25.
SuiteOutcome run_suite(const std::string& suite, const Distribution& model,
                       const SuiteOptions& opts);
std::vector<std::string> suite_names();

// The standard model battery: hardcore on complete graphs (n = 2..6,
// lambda in {0.5, 1, 2}) and Ising on paths and cycles (n = 3..6,
// beta in {-1, 0, 0.5, 1}, h in {0, 0.3}).
std::vector<std::pair<std::string, Distribution>> standard_test_models();

// Uniformly random permutation of {0..n-1} on a dedicated stream.
std::vector<int> sample_permutation(int n, std::uint64_t seed, std::uint64_t stream);

}  // namespace scanspectra
