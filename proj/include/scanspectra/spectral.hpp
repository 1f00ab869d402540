#pragma once

#include "scanspectra/operators.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace scanspectra {

// Absolute tolerance on every bound comparison. The matrices at desk scale
// carry numerical error far below this.
inline constexpr double kVerifyTol = 1e-9;

// The pi-weighted geometry of a stationary distribution over its support.
// All spectral quantities are computed in the symmetrized basis
// A = D^{1/2} M D^{-1/2} (D = diag(pi)), where the trivial direction sqrt(pi)
// is a shared left and right fixed vector of every stationary kernel. The
// mean-zero subspace is carried explicitly as an orthonormal basis so the
// trivial eigenpair is removed exactly rather than by shifting.
class PiGeometry {
public:
    explicit PiGeometry(const Eigen::VectorXd& pi);

    const Eigen::VectorXd& sqrt_pi() const { return sqrt_pi_; }
    // Orthonormal basis of the complement of sqrt_pi, m x (m-1).
    const Eigen::MatrixXd& mean_zero_basis() const { return basis_; }
    Eigen::MatrixXd mean_zero_projector() const {
        return Eigen::MatrixXd::Identity(sqrt_pi_.size(), sqrt_pi_.size()) -
               sqrt_pi_ * sqrt_pi_.transpose();
    }

    // D^{1/2} M D^{-1/2}.
    Eigen::MatrixXd conjugated(const Eigen::MatrixXd& m) const;
    // B^T (D^{1/2} M D^{-1/2}) B: the kernel's action on mean-zero functions.
    Eigen::MatrixXd restricted(const Eigen::MatrixXd& m) const;

private:
    Eigen::VectorXd sqrt_pi_;
    Eigen::VectorXd inv_sqrt_pi_;
    Eigen::MatrixXd basis_;
};

// Largest singular value of a dense matrix.
double spectral_norm_of(const Eigen::MatrixXd& m);
// Smallest singular value of a dense matrix.
double smallest_singular_value(const Eigen::MatrixXd& m);

// Largest amplification of a mean-zero function under the kernel in the
// pi-weighted norm. Equals the second-largest eigenvalue magnitude for
// reversible kernels; may strictly exceed the spectral radius for scans.
// Refuses reducible chains (the exact identity kernel is admitted as the
// degenerate empty product).
double pi_operator_norm(const MarkovKernel& kernel);

// Smallest singular value of I - M restricted to mean-zero functions (the
// trivial kernel direction sqrt(pi) carries singular value 0 and is excluded).
double laplacian_sigma2(const MarkovKernel& kernel);

struct SpectralReport {
    std::string name;
    double operator_norm = 0.0;      // norm of the kernel under test
    double gap = 0.0;                // 1 - operator_norm
    double laplacian_sigma2 = 0.0;
    double bound_value = 0.0;
    double attained = 0.0;           // the quantity compared against the bound
    double residual = 0.0;           // bound_value - attained
    bool pass = false;               // attained <= bound_value + tolerance
    std::map<std::string, double> details;  // every number needed to re-verify
};

// Scan gap bound: with delta the spectral gap of the random-scan (Glauber)
// kernel, any full scan satisfies norm <= 1 - delta/(8(n+1)).
SpectralReport verify_scan_gap_bound(const SiteKernelSet& set, const std::vector<int>& order,
                                     double tol = kVerifyTol);

// Covering-sequence gap bound: with first-appearance positions k_1 <= ... <=
// k_n of the covering prefix, norm^2 <= 1 - n*delta/(8 sum_j k_j). The
// sequence is truncated to its covering prefix (trailing factors only shrink
// the norm); delta is the random-scan gap, supplied by the caller.
SpectralReport sequence_gap_bound(const SiteKernelSet& set, const UpdateSequence& seq,
                                  double delta, double tol = kVerifyTol);

// Supersequence gap bound: with delta_scan the gap of the scan taken in the
// sequence's first-appearance order and L the covering-prefix length,
// norm <= 1 - delta_scan^2/(8(L-n+1)).
SpectralReport supersequence_gap_bound(const SiteKernelSet& set, const UpdateSequence& seq,
                                       double delta_scan, double tol = kVerifyTol);

// Power check for the converse direction, all-scans form: with delta the
// minimum scan gap over all n! permutations (n <= 5 enforced) and
// L = ceil(5 n log(200 n / delta)), verifies
//   norm(Glauber)^L <= 1 - delta^2/(100 n log(200 n / delta)),
// and reports the Glauber-gap lower bound implied after the 1/L-th root.
SpectralReport converse_power_check(const SiteKernelSet& set, double tol = kVerifyTol);

// Single-scan form of the converse: delta is the best (largest) scan gap,
// L = ceil(C n^2 log(100 C n / delta)), and the bound carries the
// subsequence-miss probability term delta^100/(100 C n^100). The constant C
// is a free parameter (default 10).
SpectralReport converse_single_scan_check(const SiteKernelSet& set, double big_c = 10.0,
                                          double tol = kVerifyTol);

// Sandwich between the scan's spectral gap and its Laplacian singular value:
// gamma <= gamma_tilde <= sqrt(2 n gamma) for the identity-order scan.
SpectralReport laplacian_comparison(const SiteKernelSet& set, double tol = kVerifyTol);

// Site kernels conjugated and restricted to the mean-zero subspace,
// (m-1) x (m-1) each. Restriction commutes with products, so suite-level
// loops can form products and norms directly in this basis.
std::vector<Eigen::MatrixXd> restricted_site_matrices(const SiteKernelSet& set);

// All permutations of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace scanspectra
