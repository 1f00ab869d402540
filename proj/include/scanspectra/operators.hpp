#pragma once

#include "scanspectra/schedules.hpp"
#include "scanspectra/statespace.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace scanspectra {

enum class KernelKind { kSite, kGlauber, kSequence, kIdentity, kCustom };

// Dense row-stochastic transition matrix over the support of its stationary
// distribution. All kernels in this toolkit live on the support only: the
// conditional site resamplings are undefined off it, and the hardcore model
// makes states of probability zero unavoidable.
class MarkovKernel {
public:
    // Validates row sums (1e-12), non-negativity (entries down to -1e-14 are
    // clamped to exact zero), stationarity of pi (1e-10 per entry), and
    // records strong connectivity of the positive-entry pattern.
    static MarkovKernel make(Eigen::MatrixXd matrix, Eigen::VectorXd pi,
                             std::vector<Index> support, std::string label, KernelKind kind,
                             int sites);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& pi() const { return pi_; }
    const std::vector<Index>& support() const { return support_; }
    const std::string& label() const { return label_; }
    KernelKind kind() const { return kind_; }
    int sites() const { return sites_; }
    Index size() const { return matrix_.rows(); }
    bool irreducible() const { return irreducible_; }
    bool is_identity() const { return identity_; }

private:
    MarkovKernel() = default;

    Eigen::MatrixXd matrix_;
    Eigen::VectorXd pi_;
    std::vector<Index> support_;
    std::string label_;
    KernelKind kind_ = KernelKind::kCustom;
    int sites_ = 0;
    bool irreducible_ = false;
    bool identity_ = false;
};

// Conditional resampling of one site: from x, move to each y that agrees with
// x off `site` with probability pi(y) / sum over that fiber. An orthogonal
// projection in the pi-weighted geometry.
MarkovKernel site_kernel(const Distribution& dist, int site);

// All n site kernels over a shared distribution. Construction verifies each
// kernel is a projection (reversible and idempotent to 1e-10).
class SiteKernelSet {
public:
    explicit SiteKernelSet(const Distribution& dist);

    int sites() const { return static_cast<int>(kernels_.size()); }
    const MarkovKernel& kernel(int site) const {
        return kernels_.at(static_cast<std::size_t>(site));
    }
    const std::vector<MarkovKernel>& kernels() const { return kernels_; }
    const Eigen::VectorXd& pi() const { return pi_; }
    const std::vector<Index>& support() const { return support_; }
    Index size() const { return pi_.size(); }

private:
    std::vector<MarkovKernel> kernels_;
    Eigen::VectorXd pi_;
    std::vector<Index> support_;
};

// Random scan: the entrywise average (1/n) sum_i P_i.
MarkovKernel glauber_kernel(const SiteKernelSet& set);

// Product kernel for a chronological update order (u_1, ..., u_L): the matrix
// is M_{u_1} M_{u_2} ... M_{u_L}, so a row distribution mu evolves as
// mu * matrix with u_1 applied first. A permutation of all sites is a scan;
// one application of it is a sweep. The empty sequence yields the identity
// kernel with a warning label.
MarkovKernel sequence_product_kernel(const SiteKernelSet& set, const UpdateSequence& seq);
MarkovKernel sequence_product_kernel(const SiteKernelSet& set, const std::vector<int>& order);

struct ProjectionCheck {
    double detailed_balance_residual = 0.0;  // max |D M - (D M)^T|, D = diag(pi)
    double idempotence_residual = 0.0;       // max |M^2 - M|
    bool pass = false;                       // both residuals <= 1e-10
};

ProjectionCheck check_projection_properties(const MarkovKernel& kernel);

}  // namespace scanspectra
