#include "scanspectra/operators.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace scanspectra {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kNegativeTol = 1e-14;
constexpr double kStationarityTol = 1e-10;
constexpr double kProjectionTol = 1e-10;
constexpr double kProductClamp = 1e-14;

bool strongly_connected(const Eigen::MatrixXd& m) {
    const Eigen::Index size = m.rows();
    auto reachable = [&](bool forward) {
        std::vector<bool> seen(static_cast<std::size_t>(size), false);
        std::deque<Eigen::Index> queue{0};
        seen[0] = true;
        Eigen::Index count = 1;
        while (!queue.empty()) {
            const Eigen::Index at = queue.front();
            queue.pop_front();
            for (Eigen::Index next = 0; next < size; ++next) {
                const double entry = forward ? m(at, next) : m(next, at);
                if (entry > 0.0 && !seen[static_cast<std::size_t>(next)]) {
                    seen[static_cast<std::size_t>(next)] = true;
                    ++count;
                    queue.push_back(next);
                }
            }
        }
        return count == size;
    };
    return reachable(true) && reachable(false);
}

std::string order_label(const std::vector<int>& order) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out << ' ';
        out << order[i];
    }
    out << ']';
    return out.str();
}

}  // namespace

MarkovKernel MarkovKernel::make(Eigen::MatrixXd matrix, Eigen::VectorXd pi,
                                std::vector<Index> support, std::string label, KernelKind kind,
                                int sites) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("MarkovKernel: matrix must be square");
    if (matrix.rows() != pi.size())
        throw std::invalid_argument("MarkovKernel: matrix and pi sizes differ");
    if (!support.empty() && static_cast<Eigen::Index>(support.size()) != pi.size())
        throw std::invalid_argument("MarkovKernel: support list has wrong length");
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            double& entry = matrix(i, j);
            if (!std::isfinite(entry))
                throw std::invalid_argument("MarkovKernel '" + label + "': non-finite entry");
            if (entry < 0.0) {
                if (entry < -kNegativeTol)
                    throw std::invalid_argument("MarkovKernel '" + label +
                                                "': negative entry " + std::to_string(entry));
                entry = 0.0;
            }
        }
        const double row_sum = stable_sum(matrix.row(i));
        if (std::abs(row_sum - 1.0) > kRowSumTol)
            throw std::invalid_argument("MarkovKernel '" + label + "': row " + std::to_string(i) +
                                        " sums to " + std::to_string(row_sum));
    }
    const Eigen::VectorXd stationarity = (pi.transpose() * matrix).transpose() - pi;
    if (stationarity.cwiseAbs().maxCoeff() > kStationarityTol)
        throw std::invalid_argument("MarkovKernel '" + label + "': pi is not stationary (max residual " +
                                    std::to_string(stationarity.cwiseAbs().maxCoeff()) + ")");
    MarkovKernel kernel;
    kernel.matrix_ = std::move(matrix);
    kernel.pi_ = std::move(pi);
    kernel.support_ = std::move(support);
    kernel.label_ = std::move(label);
    kernel.kind_ = kind;
    kernel.sites_ = sites;
    kernel.identity_ = kernel.matrix_.isIdentity(0.0);
    kernel.irreducible_ = strongly_connected(kernel.matrix_);
    return kernel;
}

MarkovKernel site_kernel(const Distribution& dist, int site) {
    const ProductSpace& space = dist.space();
    if (site < 0 || site >= space.sites())
        throw std::invalid_argument("site_kernel: site " + std::to_string(site) +
                                    " out of range for " + std::to_string(space.sites()) + " sites");
    const std::vector<Index>& support = dist.support();
    const Eigen::Index m = static_cast<Eigen::Index>(support.size());
    std::vector<Eigen::Index> row_of(static_cast<std::size_t>(space.total_states()), -1);
    for (Eigen::Index r = 0; r < m; ++r) row_of[static_cast<std::size_t>(support[r])] = r;

    Index radix = 1;
    for (int j = 0; j < site; ++j) radix *= space.alphabet_size(j);
    const int alphabet = space.alphabet_size(site);

    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Index x = support[r];
        const int digit = static_cast<int>((x / radix) % alphabet);
        const Index base = x - static_cast<Index>(digit) * radix;
        double denom = 0.0;
        for (int v = 0; v < alphabet; ++v) denom += dist.probs()(base + static_cast<Index>(v) * radix);
        for (int v = 0; v < alphabet; ++v) {
            const Index y = base + static_cast<Index>(v) * radix;
            const double p = dist.probs()(y);
            if (p > 0.0) matrix(r, row_of[static_cast<std::size_t>(y)]) = p / denom;
        }
    }
    return MarkovKernel::make(std::move(matrix), dist.support_probs(), support,
                              "site " + std::to_string(site), KernelKind::kSite, space.sites());
}

SiteKernelSet::SiteKernelSet(const Distribution& dist)
    : pi_(dist.support_probs()), support_(dist.support()) {
    const int n = dist.space().sites();
    kernels_.reserve(static_cast<std::size_t>(n));
    for (int site = 0; site < n; ++site) {
        MarkovKernel kernel = site_kernel(dist, site);
        const ProjectionCheck check = check_projection_properties(kernel);
        if (!check.pass)
            throw std::invalid_argument("SiteKernelSet: kernel for site " + std::to_string(site) +
                                        " is not a projection (balance residual " +
                                        std::to_string(check.detailed_balance_residual) +
                                        ", idempotence residual " +
                                        std::to_string(check.idempotence_residual) + ")");
        kernels_.push_back(std::move(kernel));
    }
}

MarkovKernel glauber_kernel(const SiteKernelSet& set) {
    if (set.sites() == 0) throw std::invalid_argument("glauber_kernel: empty kernel set");
    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(set.size(), set.size());
    for (const MarkovKernel& kernel : set.kernels()) matrix += kernel.matrix();
    matrix /= static_cast<double>(set.sites());
    return MarkovKernel::make(std::move(matrix), set.pi(), set.support(), "glauber",
                              KernelKind::kGlauber, set.sites());
}

MarkovKernel sequence_product_kernel(const SiteKernelSet& set, const UpdateSequence& seq) {
    if (seq.sites != set.sites())
        throw std::invalid_argument("sequence_product_kernel: sequence is for " +
                                    std::to_string(seq.sites) + " sites, kernel set has " +
                                    std::to_string(set.sites()));
    return sequence_product_kernel(set, seq.indices);
}

MarkovKernel sequence_product_kernel(const SiteKernelSet& set, const std::vector<int>& order) {
    const Eigen::Index m = set.size();
    if (order.empty()) {
        return MarkovKernel::make(Eigen::MatrixXd::Identity(m, m), set.pi(), set.support(),
                                  "identity (warning: empty update sequence)",
                                  KernelKind::kIdentity, set.sites());
    }
    validate_sequence(UpdateSequence{order, set.sites()});
    const auto clamp_tiny = [](double x) { return std::abs(x) < kProductClamp ? 0.0 : x; };
    Eigen::MatrixXd product = set.kernel(order.front()).matrix();
    for (std::size_t i = 1; i < order.size(); ++i) {
        product = product * set.kernel(order[i]).matrix();
        product = product.unaryExpr(clamp_tiny);
    }
    bool is_scan = static_cast<int>(order.size()) == set.sites();
    if (is_scan) {
        std::vector<bool> seen(order.size(), false);
        for (int idx : order) {
            if (seen[static_cast<std::size_t>(idx)]) {
                is_scan = false;
                break;
            }
            seen[static_cast<std::size_t>(idx)] = true;
        }
    }
    const std::string label = (is_scan ? "scan " : "seq ") + order_label(order);
    return MarkovKernel::make(std::move(product), set.pi(), set.support(), label,
                              KernelKind::kSequence, set.sites());
}

ProjectionCheck check_projection_properties(const MarkovKernel& kernel) {
    ProjectionCheck check;
    const Eigen::MatrixXd flow = kernel.pi().asDiagonal() * kernel.matrix();
    check.detailed_balance_residual = (flow - flow.transpose()).cwiseAbs().maxCoeff();
    check.idempotence_residual =
        (kernel.matrix() * kernel.matrix() - kernel.matrix()).cwiseAbs().maxCoeff();
    check.pass = check.detailed_balance_residual <= kProjectionTol &&
                 check.idempotence_residual <= kProjectionTol;
    return check;
}

}  // namespace scanspectra
