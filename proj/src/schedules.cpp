#include "scanspectra/schedules.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scanspectra {

void validate_sequence(const UpdateSequence& seq, bool allow_empty) {
    if (seq.sites < 1) throw std::invalid_argument("UpdateSequence: sites must be >= 1");
    if (!allow_empty && seq.indices.empty())
        throw std::invalid_argument("UpdateSequence: empty sequence");
    for (std::size_t pos = 0; pos < seq.indices.size(); ++pos) {
        const int idx = seq.indices[pos];
        if (idx < 0 || idx >= seq.sites)
            throw std::invalid_argument("UpdateSequence: index " + std::to_string(idx) +
                                        " at position " + std::to_string(pos + 1) +
                                        " out of range for " + std::to_string(seq.sites) + " sites");
    }
}

UpdateSequence make_sequence(std::vector<int> indices, int sites) {
    UpdateSequence seq{std::move(indices), sites};
    validate_sequence(seq);
    return seq;
}

FirstAppearanceStats first_appearances(const UpdateSequence& seq) {
    validate_sequence(seq, /*allow_empty=*/true);
    FirstAppearanceStats stats;
    std::vector<bool> seen(static_cast<std::size_t>(seq.sites), false);
    for (std::size_t pos = 0; pos < seq.indices.size(); ++pos) {
        const int site = seq.indices[pos];
        if (!seen[static_cast<std::size_t>(site)]) {
            seen[static_cast<std::size_t>(site)] = true;
            stats.first_positions.push_back(static_cast<long>(pos) + 1);
            stats.appearance_order.push_back(site);
            stats.cover_time = static_cast<long>(pos) + 1;
        }
    }
    stats.covered = static_cast<int>(stats.first_positions.size()) == seq.sites;
    for (long k : stats.first_positions) stats.sum_k += k;
    return stats;
}

Certificate certify_sequence(const UpdateSequence& seq) {
    const FirstAppearanceStats stats = first_appearances(seq);
    Certificate cert;
    cert.sites = seq.sites;
    cert.covered = stats.covered;
    cert.cover_time = stats.cover_time;
    cert.sum_k = stats.sum_k;
    const double n = static_cast<double>(seq.sites);
    cert.cover_threshold = 2.0 * n * std::log(n);
    cert.sum_threshold = 2.0 * n * n;
    cert.accepted = cert.covered && static_cast<double>(cert.cover_time) <= cert.cover_threshold &&
                    static_cast<double>(cert.sum_k) <= cert.sum_threshold;
    return cert;
}

UpdateSequence sample_covering_sequence(int n, std::uint64_t seed, std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("sample_covering_sequence: n must be >= 1");
    Rng rng(seed, stream);
    const long cap = static_cast<long>(std::ceil(100.0 * n * std::log(n + 1.0)));
    UpdateSequence seq{{}, n};
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int distinct = 0;
    while (distinct < n) {
        if (static_cast<long>(seq.indices.size()) >= cap)
            throw std::runtime_error("sample_covering_sequence: cover time exceeded hard cap " +
                                     std::to_string(cap) + "; generator fault?");
        const int site = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        seq.indices.push_back(site);
        if (!seen[static_cast<std::size_t>(site)]) {
            seen[static_cast<std::size_t>(site)] = true;
            ++distinct;
        }
    }
    return seq;
}

CouponMoments coupon_moments(int n) {
    if (n < 1) throw std::invalid_argument("coupon_moments: n must be >= 1");
    CouponMoments m;
    const double dn = static_cast<double>(n);
    m.expected_sum_k = dn * dn;
    double harmonic = 0.0;
    double var = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double p = (dn - l + 1) / dn;
        harmonic += 1.0 / l;
        var += 1.0 - p;
    }
    m.variance = dn * dn * var;
    m.variance_bound = dn * dn * dn;
    m.expected_cover = dn * harmonic;
    return m;
}

std::string sequence_to_string(const UpdateSequence& seq) {
    std::ostringstream out;
    for (std::size_t i = 0; i < seq.indices.size(); ++i) {
        if (i) out << ' ';
        out << seq.indices[i];
    }
    return out.str();
}

UpdateSequence sequence_from_string(const std::string& text, int sites) {
    std::istringstream in(text);
    UpdateSequence seq{{}, sites};
    long value = 0;
    while (in >> value) seq.indices.push_back(static_cast<int>(value));
    if (!in.eof())
        throw std::invalid_argument("sequence_from_string: non-integer token in '" + text + "'");
    validate_sequence(seq, /*allow_empty=*/true);
    return seq;
}

}  // namespace scanspectra
