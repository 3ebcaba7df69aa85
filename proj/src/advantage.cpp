#include "symrl/advantage.hpp"

#include <cmath>

#include "symrl/errors.hpp"

namespace symrl {

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

void GaeConfig::validate() const {
  require(gamma >= 0.0 && gamma <= 1.0, "GaeConfig: gamma must lie in [0,1]");
  require(lam >= 0.0 && lam <= 1.0, "GaeConfig: lam must lie in [0,1]");
  require(norm_epsilon > 0.0, "GaeConfig: norm_epsilon must be > 0");
}

AdvantageEstimate compute_gae(std::span<const double> rewards, std::span<const double> values,
                              double bootstrap_value, std::span<const std::uint8_t> dones,
                              const GaeConfig& cfg) {
  cfg.validate();
  const std::size_t n = rewards.size();
  require(n >= 1, "compute_gae: need at least one step");
  require(values.size() == n && dones.size() == n, "compute_gae: length mismatch");

  AdvantageEstimate est;
  est.raw.resize(n);
  est.returns.resize(n);

  double next_advantage = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double not_done = dones[t] ? 0.0 : 1.0;
    const double next_value = (t + 1 < n) ? values[t + 1] : bootstrap_value;
    const double delta = rewards[t] + cfg.gamma * next_value * not_done - values[t];
    next_advantage = delta + cfg.gamma * cfg.lam * not_done * next_advantage;
    est.raw[t] = next_advantage;
    est.returns[t] = next_advantage + values[t];
  }

  if (cfg.normalize && n >= 2) {
    NormalizedAdvantages norm = normalize_advantages(est.raw, cfg.norm_epsilon);
    est.normalized = std::move(norm.values);
    est.sign_flip_rate = norm.sign_flip_rate;
  }
  return est;
}

NormalizedAdvantages normalize_advantages(std::span<const double> raw, double norm_epsilon) {
  require(raw.size() >= 2, "normalize_advantages: need at least two samples");
  require(norm_epsilon > 0.0, "normalize_advantages: norm_epsilon must be > 0");

  const double n = static_cast<double>(raw.size());
  double mean = 0.0;
  for (double a : raw) mean += a;
  mean /= n;
  double var = 0.0;
  for (double a : raw) var += (a - mean) * (a - mean);
  const double std_dev = std::sqrt(var / n);

  NormalizedAdvantages out;
  out.values.resize(raw.size());
  std::size_t nonzero = 0;
  std::size_t flips = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.values[i] = (raw[i] - mean) / (std_dev + norm_epsilon);
    if (raw[i] != 0.0) {
      ++nonzero;
      if (sign_of(out.values[i]) != sign_of(raw[i])) ++flips;
    }
  }
  out.sign_flip_rate = nonzero ? static_cast<double>(flips) / static_cast<double>(nonzero) : 0.0;
  return out;
}

}  // namespace symrl
