#include "symrl/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "symrl/errors.hpp"

namespace symrl {

std::vector<double> softmax(std::span<const double> logits) {
  require(!logits.empty(), "softmax: empty logits");
  double max_logit = logits[0];
  for (double z : logits) {
    if (!std::isfinite(z)) throw NumericError("softmax: non-finite logit");
    max_logit = std::max(max_logit, z);
  }
  std::vector<double> probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - max_logit);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

ActionDistribution ActionDistribution::from_logits(std::span<const double> logits) {
  require(logits.size() >= 2, "ActionDistribution: k must be >= 2");
  ActionDistribution dist;
  dist.logits.assign(logits.begin(), logits.end());
  dist.probs = softmax(logits);
  return dist;
}

ActionDistribution ActionDistribution::from_probs(std::span<const double> probs) {
  require(probs.size() >= 2, "ActionDistribution: k must be >= 2");
  double total = 0.0;
  for (double p : probs) {
    require(p > 0.0 && p < 1.0 + 1e-12, "ActionDistribution: probs must lie in (0,1)");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-9, "ActionDistribution: probs must sum to 1");
  ActionDistribution dist;
  dist.probs.assign(probs.begin(), probs.end());
  dist.logits.resize(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) dist.logits[i] = std::log(probs[i]);
  return dist;
}

double ActionDistribution::log_prob(std::size_t index) const {
  require(index < probs.size(), "ActionDistribution: index out of range");
  return std::log(probs[index]);
}

double ActionDistribution::entropy() const {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

std::size_t ActionDistribution::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  double cdf = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cdf += probs[i];
    if (u < cdf) return i;
  }
  return probs.size() - 1;
}

double FactorizedDistribution::joint_log_prob(std::span<const std::size_t> indices) const {
  require(indices.size() == dims.size(), "FactorizedDistribution: index count mismatch");
  double lp = 0.0;
  for (std::size_t d = 0; d < dims.size(); ++d) lp += dims[d].log_prob(indices[d]);
  return lp;
}

double FactorizedDistribution::joint_prob(std::span<const std::size_t> indices) const {
  return std::exp(joint_log_prob(indices));
}

double FactorizedDistribution::entropy() const {
  double h = 0.0;
  for (const ActionDistribution& d : dims) h += d.entropy();
  return h;
}

std::vector<std::size_t> FactorizedDistribution::sample(RandomStream& rng) const {
  std::vector<std::size_t> indices(dims.size());
  for (std::size_t d = 0; d < dims.size(); ++d) indices[d] = dims[d].sample(rng);
  return indices;
}

Discretizer Discretizer::uniform(std::span<const double> low, std::span<const double> high,
                                 std::size_t bins_per_dim) {
  Discretizer d;
  d.low.assign(low.begin(), low.end());
  d.high.assign(high.begin(), high.end());
  d.bins.assign(low.size(), bins_per_dim);
  d.validate();
  return d;
}

void Discretizer::validate() const {
  require(!low.empty(), "Discretizer: at least one dimension required");
  require(low.size() == high.size() && low.size() == bins.size(),
          "Discretizer: low/high/bins length mismatch");
  for (std::size_t d = 0; d < low.size(); ++d) {
    require(low[d] < high[d], "Discretizer: low must be < high");
    require(bins[d] >= 2, "Discretizer: bins must be >= 2");
  }
}

std::vector<double> Discretizer::decode(std::span<const std::size_t> indices) const {
  require(indices.size() == low.size(), "Discretizer: index count mismatch");
  std::vector<double> values(indices.size());
  for (std::size_t d = 0; d < indices.size(); ++d) {
    require(indices[d] < bins[d], "Discretizer: index out of range");
    const double step = (high[d] - low[d]) / static_cast<double>(bins[d] - 1);
    values[d] = low[d] + static_cast<double>(indices[d]) * step;
  }
  return values;
}

}  // namespace symrl
