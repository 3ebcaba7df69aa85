#ifndef SYMRL_DISTRIBUTIONS_HPP_
#define SYMRL_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "symrl/rng.hpp"

namespace symrl {

// Numerically stable softmax (max-subtraction, shift invariant).
std::vector<double> softmax(std::span<const double> logits);

// Categorical distribution over k >= 2 actions for one state.
struct ActionDistribution {
  std::vector<double> logits;
  std::vector<double> probs;

  static ActionDistribution from_logits(std::span<const double> logits);
  static ActionDistribution from_probs(std::span<const double> probs);

  std::size_t k() const { return probs.size(); }
  double log_prob(std::size_t index) const;
  double entropy() const;  // in [0, log k]
  std::size_t sample(RandomStream& rng) const;
};

// Independent categorical per action dimension; the joint log-probability of
// a multi-index is the sum of per-dimension log-probabilities.
struct FactorizedDistribution {
  std::vector<ActionDistribution> dims;

  std::size_t n_dims() const { return dims.size(); }
  double joint_log_prob(std::span<const std::size_t> indices) const;
  double joint_prob(std::span<const std::size_t> indices) const;
  double entropy() const;  // sum of per-dimension entropies
  std::vector<std::size_t> sample(RandomStream& rng) const;
};

// Uniform grid over a box: index 0 maps to low, index bins-1 maps to high.
struct Discretizer {
  std::vector<double> low;
  std::vector<double> high;
  std::vector<std::size_t> bins;

  static Discretizer uniform(std::span<const double> low, std::span<const double> high,
                             std::size_t bins_per_dim);

  void validate() const;
  std::size_t n_dims() const { return low.size(); }
  std::vector<double> decode(std::span<const std::size_t> indices) const;
};

}  // namespace symrl

#endif  // SYMRL_DISTRIBUTIONS_HPP_
