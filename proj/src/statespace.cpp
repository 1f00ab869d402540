#include "scanspectra/statespace.hpp"

#include <cmath>

namespace scanspectra {

ProductSpace::ProductSpace(std::vector<int> alphabet_sizes, Index state_cap)
    : alphabet_sizes_(std::move(alphabet_sizes)) {
    if (alphabet_sizes_.empty())
        throw std::invalid_argument("ProductSpace: need at least one site");
    if (state_cap < 1) throw std::invalid_argument("ProductSpace: state cap must be positive");
    total_states_ = 1;
    for (std::size_t i = 0; i < alphabet_sizes_.size(); ++i) {
        const int size = alphabet_sizes_[i];
        if (size < 1)
            throw std::invalid_argument("ProductSpace: alphabet size at site " + std::to_string(i) +
                                        " must be >= 1, got " + std::to_string(size));
        if (total_states_ > state_cap / size)
            throw std::invalid_argument("ProductSpace: total state count exceeds cap " +
                                        std::to_string(state_cap));
        total_states_ *= size;
    }
}

Index encode_state(const ProductSpace& space, const StateVector& state) {
    if (static_cast<int>(state.size()) != space.sites())
        throw std::invalid_argument("encode_state: state has " + std::to_string(state.size()) +
                                    " coordinates, space has " + std::to_string(space.sites()) +
                                    " sites");
    Index index = 0;
    Index radix = 1;
    for (int i = 0; i < space.sites(); ++i) {
        const int value = state[static_cast<std::size_t>(i)];
        if (value < 0 || value >= space.alphabet_size(i))
            throw std::invalid_argument("encode_state: coordinate " + std::to_string(value) +
                                        " out of range at site " + std::to_string(i));
        index += static_cast<Index>(value) * radix;
        radix *= space.alphabet_size(i);
    }
    return index;
}

StateVector decode_state(const ProductSpace& space, Index index) {
    if (index < 0 || index >= space.total_states())
        throw std::invalid_argument("decode_state: index " + std::to_string(index) +
                                    " out of range");
    StateVector state(static_cast<std::size_t>(space.sites()));
    for (int i = 0; i < space.sites(); ++i) {
        const int size = space.alphabet_size(i);
        state[static_cast<std::size_t>(i)] = static_cast<int>(index % size);
        index /= size;
    }
    return state;
}

Distribution::Distribution(ProductSpace space, Eigen::VectorXd probs)
    : space_(std::move(space)), probs_(std::move(probs)) {
    if (probs_.size() != space_.total_states())
        throw std::invalid_argument("Distribution: probability vector has wrong length");
    pi_min_ = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
        const double p = probs_(i);
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument("Distribution: probability at state " + std::to_string(i) +
                                        " is negative or non-finite");
        if (p > 0.0) {
            support_.push_back(static_cast<Index>(i));
            pi_min_ = std::min(pi_min_, p);
        }
    }
    if (support_.empty()) throw std::invalid_argument("Distribution: empty support");
    const double total = stable_sum(probs_);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("Distribution: probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
}

Eigen::VectorXd Distribution::support_probs() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(support_.size()));
    for (std::size_t i = 0; i < support_.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = probs_(support_[i]);
    return out;
}

Distribution normalize_weights(const ProductSpace& space, const Eigen::VectorXd& raw) {
    if (raw.size() != space.total_states())
        throw std::invalid_argument("normalize_weights: weight vector has length " +
                                    std::to_string(raw.size()) + ", expected " +
                                    std::to_string(space.total_states()));
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw(i)) || raw(i) < 0.0)
            throw std::invalid_argument("normalize_weights: weight at state " + std::to_string(i) +
                                        " is negative or non-finite");
    }
    const double total = stable_sum(raw);
    if (total <= 0.0) throw std::invalid_argument("normalize_weights: all weights are zero");
    return Distribution(space, raw / total);
}

}  // namespace scanspectra
