#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scanspectra {

using Index = std::int64_t;

// A configuration: one value per site, coords[i] in {0, ..., |X_i|-1}.
using StateVector = std::vector<int>;

// Finite product space X_1 x ... x X_n, enumerated in mixed radix with site 0
// as the least significant digit. Construction fails if the total state count
// exceeds the cap; every dense computation downstream relies on that cap.
class ProductSpace {
public:
    static constexpr Index kDefaultStateCap = 65536;

    explicit ProductSpace(std::vector<int> alphabet_sizes, Index state_cap = kDefaultStateCap);

    int sites() const { return static_cast<int>(alphabet_sizes_.size()); }
    int alphabet_size(int site) const { return alphabet_sizes_.at(static_cast<std::size_t>(site)); }
    const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
    Index total_states() const { return total_states_; }

private:
    std::vector<int> alphabet_sizes_;
    Index total_states_ = 0;
};

// Mixed-radix index of a state: sum_i coords[i] * prod_{j<i} |X_j|.
Index encode_state(const ProductSpace& space, const StateVector& state);
StateVector decode_state(const ProductSpace& space, Index index);

// Compensated (Kahan) summation; keeps probability-sum validation well below
// the 1e-12 gate even for the largest admissible spaces.
template <typename Derived>
double stable_sum(const Eigen::MatrixBase<Derived>& v) {
    double sum = 0.0;
    double carry = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double y = static_cast<double>(v(i)) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// Total variation distance (1/2) * sum |mu - nu| between probability vectors.
template <typename DerivedA, typename DerivedB>
double tv_distance(const Eigen::MatrixBase<DerivedA>& mu, const Eigen::MatrixBase<DerivedB>& nu) {
    if (mu.size() != nu.size())
        throw std::invalid_argument("tv_distance: length mismatch (" + std::to_string(mu.size()) +
                                    " vs " + std::to_string(nu.size()) + ")");
    if (std::abs(stable_sum(mu) - 1.0) > 1e-8 || std::abs(stable_sum(nu) - 1.0) > 1e-8)
        throw std::invalid_argument("tv_distance: inputs must sum to 1");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        acc += std::abs(static_cast<double>(mu(i)) - static_cast<double>(nu(i)));
    return 0.5 * acc;
}

// Probability vector over the enumerated states of a ProductSpace together
// with its support and smallest positive mass. Immutable once built.
class Distribution {
public:
    Distribution(ProductSpace space, Eigen::VectorXd probs);

    const ProductSpace& space() const { return space_; }
    const Eigen::VectorXd& probs() const { return probs_; }
    const std::vector<Index>& support() const { return support_; }
    double pi_min() const { return pi_min_; }

    // Probabilities restricted to the support, in support order.
    Eigen::VectorXd support_probs() const;

private:
    ProductSpace space_;
    Eigen::VectorXd probs_;
    std::vector<Index> support_;
    double pi_min_ = 0.0;
};

// Normalizes non-negative weights into a Distribution. Rejects negative,
// non-finite, or all-zero weight vectors.
Distribution normalize_weights(const ProductSpace& space, const Eigen::VectorXd& raw);

}  // namespace scanspectra
