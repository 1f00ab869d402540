#include "scanspectra/projections.hpp"

#include "scanspectra/rng.hpp"
#include "scanspectra/spectral.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace scanspectra {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kIdempotenceTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

ProjectionFamily make_projection_family(int dimension, std::vector<Eigen::MatrixXd> matrices) {
    if (dimension < 1) throw std::invalid_argument("ProjectionFamily: dimension must be >= 1");
    if (matrices.empty()) throw std::invalid_argument("ProjectionFamily: empty family");
    ProjectionFamily family;
    family.dimension = dimension;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const Eigen::MatrixXd& m = matrices[i];
        if (m.rows() != dimension || m.cols() != dimension)
            throw std::invalid_argument("ProjectionFamily: member " + std::to_string(i) +
                                        " has wrong shape");
        family.max_symmetry_residual = std::max(family.max_symmetry_residual,
                                                (m - m.transpose()).cwiseAbs().maxCoeff());
        family.max_idempotence_residual =
            std::max(family.max_idempotence_residual, (m * m - m).cwiseAbs().maxCoeff());
    }
    if (family.max_symmetry_residual > kSymmetryTol)
        throw std::invalid_argument("ProjectionFamily: member matrices must be symmetric (residual " +
                                    std::to_string(family.max_symmetry_residual) + ")");
    family.kind = family.max_idempotence_residual <= kIdempotenceTol
                      ? FamilyKind::kOrthogonalProjection
                      : FamilyKind::kPsdGeneral;
    family.matrices = std::move(matrices);
    return family;
}

ProjectionFamily recht_re_family(int n, double delta) {
    if (n < 2) throw std::invalid_argument("recht_re_family: n must be >= 2");
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("recht_re_family: delta must lie in [0, 1]");
    const double omega = kPi / n;
    const double scale = std::sqrt(2.0 * (1.0 - delta));
    std::vector<Eigen::MatrixXd> matrices;
    matrices.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        Eigen::Vector2d a(scale * std::cos(k * omega), scale * std::sin(k * omega));
        Eigen::MatrixXd member = a * a.transpose();
        member = 0.5 * (member + member.transpose().eval());
        matrices.push_back(std::move(member));
    }
    ProjectionFamily family = make_projection_family(2, std::move(matrices));
    if (delta == 0.5) family.kind = FamilyKind::kOrthogonalProjection;
    return family;
}

double closed_form_product_norm(int n, double delta) {
    if (n < 2) throw std::invalid_argument("closed_form_product_norm: n must be >= 2");
    return std::pow(2.0 * (1.0 - delta), n) * std::pow(std::cos(kPi / n), n - 1);
}

double family_product_norm(const ProjectionFamily& family, const std::vector<int>& seq) {
    Eigen::MatrixXd product = Eigen::MatrixXd::Identity(family.dimension, family.dimension);
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        const int idx = seq[pos];
        if (idx < 0 || idx >= static_cast<int>(family.matrices.size()))
            throw std::invalid_argument("family_product_norm: index " + std::to_string(idx) +
                                        " at position " + std::to_string(pos + 1) + " out of range");
        product = product * family.matrices[static_cast<std::size_t>(idx)];
    }
    return spectral_norm_of(product);
}

double family_average_norm(const ProjectionFamily& family) {
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(family.dimension, family.dimension);
    for (const Eigen::MatrixXd& m : family.matrices) mean += m;
    mean /= static_cast<double>(family.matrices.size());
    return spectral_norm_of(mean);
}

ProjectionFamily random_projection_family(int dimension, int n, const std::vector<int>& ranks,
                                          std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_projection_family: n must be >= 1");
    if (static_cast<int>(ranks.size()) != n)
        throw std::invalid_argument("random_projection_family: need one rank per member");
    std::vector<Eigen::MatrixXd> matrices;
    matrices.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int rank = ranks[static_cast<std::size_t>(i)];
        if (rank < 1 || rank > dimension)
            throw std::invalid_argument("random_projection_family: rank " + std::to_string(rank) +
                                        " out of range for dimension " + std::to_string(dimension));
        Rng rng(seed, static_cast<std::uint64_t>(i));
        Eigen::MatrixXd gaussian(dimension, rank);
        for (int r = 0; r < dimension; ++r)
            for (int c = 0; c < rank; ++c) gaussian(r, c) = rng.next_normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
        const Eigen::MatrixXd thin_q =
            qr.householderQ() * Eigen::MatrixXd::Identity(dimension, rank);
        Eigen::MatrixXd projector = thin_q * thin_q.transpose();
        projector = 0.5 * (projector + projector.transpose().eval());
        matrices.push_back(std::move(projector));
    }
    return make_projection_family(dimension, std::move(matrices));
}

std::vector<RechtReSweepRow> recht_re_sweep(const std::vector<int>& n_values, double delta) {
    std::vector<RechtReSweepRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        const ProjectionFamily family = recht_re_family(n, delta);
        std::vector<int> identity_order;
        for (int i = 0; i < n; ++i) identity_order.push_back(i);
        RechtReSweepRow row;
        row.n = n;
        row.delta = delta;
        row.closed_form = closed_form_product_norm(n, delta);
        row.direct_norm = family_product_norm(family, identity_order);
        const double delta_avg = 1.0 - family_average_norm(family);
        row.bound = delta_avg / (8.0 * (n + 1.0));
        row.ratio = (1.0 - row.direct_norm) / row.bound;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::vector<RechtReSweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep CSV: " + path);
    out << "n,delta,closed_form,direct_norm,bound,ratio\n";
    out.precision(17);
    for (const RechtReSweepRow& row : rows)
        out << row.n << ',' << row.delta << ',' << row.closed_form << ',' << row.direct_norm << ','
            << row.bound << ',' << row.ratio << '\n';
}

}  // namespace scanspectra
