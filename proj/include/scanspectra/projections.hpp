#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace scanspectra {

// Abstract projection laboratory, decoupled from Markov chains: these
// families carry no stationary direction, so every norm here is the plain
// Euclidean operator norm on the full space (no mean-zero deflation).
enum class FamilyKind { kOrthogonalProjection, kPsdGeneral };

struct ProjectionFamily {
    int dimension = 0;
    std::vector<Eigen::MatrixXd> matrices;
    FamilyKind kind = FamilyKind::kPsdGeneral;
    double max_symmetry_residual = 0.0;
    double max_idempotence_residual = 0.0;
};

// Validates symmetry (1e-12) and classifies the family by its measured
// idempotence residual (1e-10).
ProjectionFamily make_projection_family(int dimension, std::vector<Eigen::MatrixXd> matrices);

// Planar rank-one family along equiangular directions: for k = 1..n,
//   a_k = sqrt(2(1-delta)) (cos(k pi/n), sin(k pi/n)),  A_k = a_k a_k^T.
// Isotropic up to scaling: the average is (1-delta) I. Members are orthogonal
// projections exactly when delta = 1/2.
ProjectionFamily recht_re_family(int n, double delta);

// Closed form for the identity-order product norm of that family:
// (2(1-delta))^n cos(pi/n)^(n-1).
double closed_form_product_norm(int n, double delta);

// Euclidean spectral norm of the product in chronological order (first index
// leftmost). The empty product is the identity (norm 1).
double family_product_norm(const ProjectionFamily& family, const std::vector<int>& seq);

// Spectral norm of the arithmetic mean of the family.
double family_average_norm(const ProjectionFamily& family);

// Orthogonal projectors onto spans of rank_i i.i.d. Gaussian vectors,
// deterministic per seed.
ProjectionFamily random_projection_family(int dimension, int n, const std::vector<int>& ranks,
                                          std::uint64_t seed);

struct RechtReSweepRow {
    int n = 0;
    double delta = 0.0;
    double closed_form = 0.0;
    double direct_norm = 0.0;
    double bound = 0.0;  // gap lower bound delta_avg / (8(n+1)) from the scan comparison
    double ratio = 0.0;  // (1 - direct_norm) / bound
};

std::vector<RechtReSweepRow> recht_re_sweep(const std::vector<int>& n_values, double delta);
void write_sweep_csv(const std::vector<RechtReSweepRow>& rows, const std::string& path);

}  // namespace scanspectra
