#include "scanspectra/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scanspectra {

namespace {

void require_analyzable(const MarkovKernel& kernel) {
    if (!kernel.irreducible() && !kernel.is_identity())
        throw std::invalid_argument("spectral analysis refused: kernel '" + kernel.label() +
                                    "' is reducible");
}

double scan_delta_or_throw(const Eigen::MatrixXd& restricted_glauber, const std::string& what) {
    const double delta = 1.0 - spectral_norm_of(restricted_glauber);
    if (delta <= 0.0)
        throw std::invalid_argument(what + ": random-scan kernel has no spectral gap");
    return delta;
}

Eigen::MatrixXd restricted_product(const std::vector<Eigen::MatrixXd>& site_matrices,
                                   const std::vector<int>& order) {
    const Eigen::Index m = site_matrices.front().rows();
    if (order.empty()) return Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd product = site_matrices[static_cast<std::size_t>(order.front())];
    for (std::size_t i = 1; i < order.size(); ++i)
        product = product * site_matrices[static_cast<std::size_t>(order[i])];
    return product;
}

void check_permutation(const std::vector<int>& order, int sites) {
    if (static_cast<int>(order.size()) != sites)
        throw std::invalid_argument("expected a permutation of all " + std::to_string(sites) +
                                    " sites");
    std::vector<bool> seen(static_cast<std::size_t>(sites), false);
    for (int idx : order) {
        if (idx < 0 || idx >= sites || seen[static_cast<std::size_t>(idx)])
            throw std::invalid_argument("order is not a permutation of the sites");
        seen[static_cast<std::size_t>(idx)] = true;
    }
}

}  // namespace

PiGeometry::PiGeometry(const Eigen::VectorXd& pi) {
    if (pi.size() < 1) throw std::invalid_argument("PiGeometry: empty distribution");
    for (Eigen::Index i = 0; i < pi.size(); ++i)
        if (!(pi(i) > 0.0))
            throw std::invalid_argument("PiGeometry: pi must be strictly positive on the support");
    sqrt_pi_ = pi.cwiseSqrt();
    inv_sqrt_pi_ = sqrt_pi_.cwiseInverse();
    const Eigen::Index m = pi.size();
    if (m > 1) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(sqrt_pi_);
        const Eigen::MatrixXd q = qr.householderQ();
        basis_ = q.rightCols(m - 1);
    } else {
        basis_ = Eigen::MatrixXd(1, 0);
    }
}

Eigen::MatrixXd PiGeometry::conjugated(const Eigen::MatrixXd& m) const {
    return sqrt_pi_.asDiagonal() * m * inv_sqrt_pi_.asDiagonal();
}

Eigen::MatrixXd PiGeometry::restricted(const Eigen::MatrixXd& m) const {
    return basis_.transpose() * conjugated(m) * basis_;
}

double spectral_norm_of(const Eigen::MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double pi_operator_norm(const MarkovKernel& kernel) {
    require_analyzable(kernel);
    if (kernel.size() == 1) return 0.0;
    PiGeometry geometry(kernel.pi());
    return spectral_norm_of(geometry.restricted(kernel.matrix()));
}

double laplacian_sigma2(const MarkovKernel& kernel) {
    require_analyzable(kernel);
    if (kernel.size() == 1) return 0.0;
    PiGeometry geometry(kernel.pi());
    const Eigen::MatrixXd restricted = geometry.restricted(kernel.matrix());
    const Eigen::Index m = restricted.rows();
    return smallest_singular_value(Eigen::MatrixXd::Identity(m, m) - restricted);
}

std::vector<Eigen::MatrixXd> restricted_site_matrices(const SiteKernelSet& set) {
    PiGeometry geometry(set.pi());
    std::vector<Eigen::MatrixXd> out;
    out.reserve(static_cast<std::size_t>(set.sites()));
    for (const MarkovKernel& kernel : set.kernels()) out.push_back(geometry.restricted(kernel.matrix()));
    return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
    return perms;
}

SpectralReport verify_scan_gap_bound(const SiteKernelSet& set, const std::vector<int>& order,
                                     double tol) {
    check_permutation(order, set.sites());
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    Eigen::MatrixXd glauber = Eigen::MatrixXd::Zero(site_matrices.front().rows(),
                                                    site_matrices.front().cols());
    for (const Eigen::MatrixXd& m : site_matrices) glauber += m;
    glauber /= static_cast<double>(set.sites());
    const double delta = scan_delta_or_throw(glauber, "verify_scan_gap_bound");

    const Eigen::MatrixXd product = restricted_product(site_matrices, order);
    SpectralReport report;
    report.name = "scan gap bound, order " + sequence_to_string(UpdateSequence{order, set.sites()});
    report.operator_norm = spectral_norm_of(product);
    report.gap = 1.0 - report.operator_norm;
    report.laplacian_sigma2 = smallest_singular_value(
        Eigen::MatrixXd::Identity(product.rows(), product.cols()) - product);
    report.bound_value = 1.0 - delta / (8.0 * (set.sites() + 1.0));
    report.attained = report.operator_norm;
    report.residual = report.bound_value - report.attained;
    report.pass = report.attained <= report.bound_value + tol;
    report.details["delta"] = delta;
    report.details["sites"] = static_cast<double>(set.sites());
    return report;
}

SpectralReport sequence_gap_bound(const SiteKernelSet& set, const UpdateSequence& seq,
                                  double delta, double tol) {
    if (seq.sites != set.sites())
        throw std::invalid_argument("sequence_gap_bound: sequence/site-count mismatch");
    if (delta <= 0.0) throw std::invalid_argument("sequence_gap_bound: delta must be positive");
    const FirstAppearanceStats stats = first_appearances(seq);
    if (!stats.covered) throw std::invalid_argument("sequence_gap_bound: incomplete cover");

    const std::vector<int> prefix(seq.indices.begin(),
                                  seq.indices.begin() + stats.cover_time);
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    const Eigen::MatrixXd product = restricted_product(site_matrices, prefix);

    SpectralReport report;
    report.name = "covering-sequence gap bound, L=" + std::to_string(stats.cover_time);
    report.operator_norm = spectral_norm_of(product);
    report.gap = 1.0 - report.operator_norm;
    report.bound_value =
        1.0 - static_cast<double>(set.sites()) * delta / (8.0 * static_cast<double>(stats.sum_k));
    report.attained = report.operator_norm * report.operator_norm;
    report.residual = report.bound_value - report.attained;
    report.pass = report.attained <= report.bound_value + tol;
    report.details["delta"] = delta;
    report.details["sum_k"] = static_cast<double>(stats.sum_k);
    report.details["cover_time"] = static_cast<double>(stats.cover_time);
    report.details["sequence_length"] = static_cast<double>(seq.indices.size());
    return report;
}

SpectralReport supersequence_gap_bound(const SiteKernelSet& set, const UpdateSequence& seq,
                                       double delta_scan, double tol) {
    if (seq.sites != set.sites())
        throw std::invalid_argument("supersequence_gap_bound: sequence/site-count mismatch");
    if (delta_scan <= 0.0)
        throw std::invalid_argument("supersequence_gap_bound: delta_scan must be positive");
    const FirstAppearanceStats stats = first_appearances(seq);
    if (!stats.covered) throw std::invalid_argument("supersequence_gap_bound: incomplete cover");

    const std::vector<int> prefix(seq.indices.begin(),
                                  seq.indices.begin() + stats.cover_time);
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    const Eigen::MatrixXd product = restricted_product(site_matrices, prefix);
    const double length = static_cast<double>(stats.cover_time);

    SpectralReport report;
    report.name = "supersequence gap bound, L=" + std::to_string(stats.cover_time);
    report.operator_norm = spectral_norm_of(product);
    report.gap = 1.0 - report.operator_norm;
    report.bound_value =
        1.0 - delta_scan * delta_scan / (8.0 * (length - set.sites() + 1.0));
    report.attained = report.operator_norm;
    report.residual = report.bound_value - report.attained;
    report.pass = report.attained <= report.bound_value + tol;
    report.details["delta_scan"] = delta_scan;
    report.details["cover_time"] = length;
    report.details["sequence_length"] = static_cast<double>(seq.indices.size());
    return report;
}

namespace {

// Shared mechanism for the converse checks: verify norm(Glauber)^L <= bound.
SpectralReport power_check(const SiteKernelSet& set, double delta, double length_real,
                           double bound, const std::string& name, double tol) {
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    Eigen::MatrixXd glauber = Eigen::MatrixXd::Zero(site_matrices.front().rows(),
                                                    site_matrices.front().cols());
    for (const Eigen::MatrixXd& m : site_matrices) glauber += m;
    glauber /= static_cast<double>(set.sites());
    const double glauber_norm = spectral_norm_of(glauber);
    const double length = std::ceil(length_real);

    SpectralReport report;
    report.name = name;
    report.operator_norm = glauber_norm;
    report.gap = 1.0 - glauber_norm;
    report.bound_value = bound;
    report.attained = std::pow(glauber_norm, length);
    report.residual = report.bound_value - report.attained;
    report.pass = report.attained <= report.bound_value + tol;
    report.details["delta"] = delta;
    report.details["power"] = length;
    report.details["implied_glauber_norm"] = std::pow(bound, 1.0 / length);
    report.details["implied_glauber_gap"] = 1.0 - std::pow(bound, 1.0 / length);
    return report;
}

}  // namespace

SpectralReport converse_power_check(const SiteKernelSet& set, double tol) {
    const int n = set.sites();
    if (n > 5)
        throw std::invalid_argument(
            "converse_power_check: unsupported for more than 5 sites (n! scans)");
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    double delta = std::numeric_limits<double>::infinity();
    for (const std::vector<int>& perm : all_permutations(n))
        delta = std::min(delta, 1.0 - spectral_norm_of(restricted_product(site_matrices, perm)));
    if (delta <= 0.0)
        throw std::invalid_argument("converse_power_check: some scan has no spectral gap");

    const double log_term = std::log(200.0 * n / delta);
    const double bound = 1.0 - delta * delta / (100.0 * n * log_term);
    SpectralReport report = power_check(set, delta, 5.0 * n * log_term, bound,
                                        "converse power check (all scans)", tol);
    report.details["min_scan_gap"] = delta;
    return report;
}

SpectralReport converse_single_scan_check(const SiteKernelSet& set, double big_c, double tol) {
    const int n = set.sites();
    if (n > 5)
        throw std::invalid_argument(
            "converse_single_scan_check: unsupported for more than 5 sites (n! scans)");
    if (!(big_c > 0.0)) throw std::invalid_argument("converse_single_scan_check: C must be positive");
    const std::vector<Eigen::MatrixXd> site_matrices = restricted_site_matrices(set);
    double delta = -std::numeric_limits<double>::infinity();
    for (const std::vector<int>& perm : all_permutations(n))
        delta = std::max(delta, 1.0 - spectral_norm_of(restricted_product(site_matrices, perm)));
    if (delta <= 0.0)
        throw std::invalid_argument("converse_single_scan_check: no scan has a spectral gap");

    const double log_term = std::log(100.0 * big_c * n / delta);
    const double miss_term = std::pow(delta, 100.0) / (100.0 * big_c * std::pow(n, 100.0));
    const double bound = 1.0 - delta * delta / (8.0 * big_c * n * n * log_term) + miss_term;
    SpectralReport report = power_check(set, delta, big_c * n * n * log_term, bound,
                                        "converse power check (single scan)", tol);
    report.details["best_scan_gap"] = delta;
    report.details["C"] = big_c;
    return report;
}

SpectralReport laplacian_comparison(const SiteKernelSet& set, double tol) {
    if (set.size() == 1) {
        // Point-mass support: the mean-zero space is empty and the sandwich
        // is vacuous.
        SpectralReport report;
        report.name = "laplacian sandwich, identity scan (vacuous: single-state support)";
        report.operator_norm = 0.0;
        report.gap = 0.0;
        report.pass = true;
        return report;
    }
    std::vector<int> identity_order(static_cast<std::size_t>(set.sites()));
    std::iota(identity_order.begin(), identity_order.end(), 0);
    const MarkovKernel scan = sequence_product_kernel(set, identity_order);
    require_analyzable(scan);

    const double gap = 1.0 - pi_operator_norm(scan);
    const double sigma2 = laplacian_sigma2(scan);
    const double upper = std::sqrt(2.0 * set.sites() * std::max(gap, 0.0));

    SpectralReport report;
    report.name = "laplacian sandwich, identity scan";
    report.operator_norm = 1.0 - gap;
    report.gap = gap;
    report.laplacian_sigma2 = sigma2;
    report.bound_value = upper;
    report.attained = sigma2;
    report.residual = upper - sigma2;
    report.pass = gap <= sigma2 + tol && sigma2 <= upper + tol;
    report.details["sqrt_2n_gamma"] = upper;
    report.details["sites"] = static_cast<double>(set.sites());
    return report;
}

}  // namespace scanspectra
