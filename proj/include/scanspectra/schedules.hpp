#pragma once

#include "scanspectra/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scanspectra {

// A chronological list of site indices i_1, ..., i_L to update, for a model
// with `sites` sites. Positions are 1-based throughout this module; the gap
// bounds depend on first-appearance positions and an off-by-one here would
// silently corrupt all of them.
struct UpdateSequence {
    std::vector<int> indices;
    int sites = 0;
};

// Validates index ranges; `allow_empty` admits L = 0 (the empty product).
void validate_sequence(const UpdateSequence& seq, bool allow_empty = false);

UpdateSequence make_sequence(std::vector<int> indices, int sites);

struct FirstAppearanceStats {
    // 1-based first-appearance positions, in order of appearance (strictly
    // increasing; k_1 = 1 whenever L >= 1).
    std::vector<long> first_positions;
    // Sites in order of first appearance (same length as first_positions).
    std::vector<int> appearance_order;
    bool covered = false;
    long cover_time = 0;  // position where the last new site appears
    long sum_k = 0;       // sum of first_positions
};

FirstAppearanceStats first_appearances(const UpdateSequence& seq);

// Linear-time certificate for a random update sequence: accepted iff the
// sequence covers all sites with cover time <= 2n log n and sum of
// first-appearance positions <= 2n^2. An accepted sequence's product of site
// resamplings contracts mean-zero functions by at least delta/(32n), where
// delta is the spectral gap of the random-scan kernel.
struct Certificate {
    int sites = 0;
    bool covered = false;
    long cover_time = 0;
    long sum_k = 0;
    double cover_threshold = 0.0;  // 2 n log n (natural log)
    double sum_threshold = 0.0;    // 2 n^2
    bool accepted = false;

    double norm_bound(double delta) const { return 1.0 - delta / (32.0 * sites); }
};

Certificate certify_sequence(const UpdateSequence& seq);

// I.i.d. uniform site indices, truncated at the first time all sites have
// appeared. Deterministic for a fixed (seed, stream). A hard cap of
// ceil(100 n log(n+1)) draws guards against a faulty generator.
UpdateSequence sample_covering_sequence(int n, std::uint64_t seed, std::uint64_t stream = 0);

// Exact coupon-collector moments of the first-appearance statistics for
// i.i.d. uniform draws: E[sum_k] = n^2, Var(sum_k) = n^2 sum_l (1 - p_l)
// with p_l = (n-l+1)/n, and E[cover time] = n H_n.
struct CouponMoments {
    double expected_sum_k = 0.0;
    double variance = 0.0;
    double variance_bound = 0.0;  // n^3
    double expected_cover = 0.0;
};

CouponMoments coupon_moments(int n);

// Serialization as whitespace-separated integers.
std::string sequence_to_string(const UpdateSequence& seq);
UpdateSequence sequence_from_string(const std::string& text, int sites);

}  // namespace scanspectra
