#include "symrl/losses.hpp"

#include <algorithm>
#include <cmath>

#include "symrl/errors.hpp"

namespace symrl {

namespace {

void check_sample(const LossSample& s, bool needs_old_prob) {
  require(s.dist.k() >= 2, "LossSample: distribution must have k >= 2");
  require(s.action_index < s.dist.k(), "LossSample: action_index out of range");
  if (!std::isfinite(s.advantage)) throw NumericError("LossSample: non-finite advantage");
  if (needs_old_prob)
    require(s.old_prob > 0.0 && s.old_prob <= 1.0, "LossSample: old_prob must lie in (0,1]");
}

}  // namespace

void SymmetricLossConfig::validate() const {
  require(alpha > 0.0, "SymmetricLossConfig: alpha must be > 0");
  require(beta >= 0.0, "SymmetricLossConfig: beta must be >= 0");
  require(log_zero < 0.0, "SymmetricLossConfig: log_zero must be strictly negative");
  require(clip_epsilon > 0.0 && clip_epsilon < 1.0,
          "SymmetricLossConfig: clip_epsilon must lie in (0,1)");
}

double a2c_loss(const LossSample& s) {
  check_sample(s, false);
  const double pi = s.dist.probs[s.action_index];
  if (pi <= 0.0) throw NumericError("a2c_loss: sampled probability is zero");
  return -s.advantage * std::log(pi);
}

double ra2c_loss(const LossSample& s, double log_zero) {
  check_sample(s, false);
  require(log_zero < 0.0, "ra2c_loss: log_zero must be strictly negative");
  if (s.advantage == 0.0) return 0.0;
  const double pi = s.dist.probs[s.action_index];
  return std::abs(s.advantage) * std::abs(log_zero) * (1.0 - pi);
}

bool ppo_sample_clipped(const LossSample& s, double clip_epsilon) {
  check_sample(s, true);
  const double ratio = s.dist.probs[s.action_index] / s.old_prob;
  const double clipped_ratio = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  // The min strictly selects the clipped branch iff its surrogate is smaller.
  return clipped_ratio * s.advantage < ratio * s.advantage;
}

PpoLoss ppo_loss(const LossSample& s, double clip_epsilon) {
  check_sample(s, true);
  const double ratio = s.dist.probs[s.action_index] / s.old_prob;
  const double clipped_ratio = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  const double surrogate = std::min(ratio * s.advantage, clipped_ratio * s.advantage);
  return PpoLoss{-surrogate, clipped_ratio * s.advantage < ratio * s.advantage};
}

double rppo_loss(const LossSample& s, double log_zero, double clip_epsilon) {
  if (ppo_sample_clipped(s, clip_epsilon)) return 0.0;
  return ra2c_loss(s, log_zero) / s.old_prob;
}

double ra2c_objective(const LossSample& s, double log_zero) {
  check_sample(s, false);
  require(log_zero < 0.0, "ra2c_objective: log_zero must be strictly negative");
  if (s.advantage == 0.0) return 0.0;
  const double pi = s.dist.probs[s.action_index];
  return -s.advantage * log_zero * (1.0 - pi);
}

double rppo_objective(const LossSample& s, double log_zero, double clip_epsilon) {
  if (ppo_sample_clipped(s, clip_epsilon)) return 0.0;
  return ra2c_objective(s, log_zero) / s.old_prob;
}

LossValue symmetric_loss(const LossSample& s, const SymmetricLossConfig& cfg) {
  cfg.validate();
  LossValue out;
  if (cfg.algorithm == Algorithm::a2c) {
    out.forward_part = a2c_loss(s);
    out.reverse_part = ra2c_loss(s, cfg.log_zero);
  } else {
    const PpoLoss fwd = ppo_loss(s, cfg.clip_epsilon);
    out.forward_part = fwd.value;
    out.reverse_part = rppo_loss(s, cfg.log_zero, cfg.clip_epsilon);
    out.clipped = fwd.clipped;
  }
  out.total = cfg.alpha * out.forward_part + cfg.beta * out.reverse_part;
  return out;
}

double symmetric_objective(const LossSample& s, const SymmetricLossConfig& cfg) {
  cfg.validate();
  if (cfg.algorithm == Algorithm::a2c)
    return cfg.alpha * a2c_loss(s) + cfg.beta * ra2c_objective(s, cfg.log_zero);
  return cfg.alpha * ppo_loss(s, cfg.clip_epsilon).value +
         cfg.beta * rppo_objective(s, cfg.log_zero, cfg.clip_epsilon);
}

std::vector<double> a2c_logit_gradient(const LossSample& s) {
  check_sample(s, false);
  const std::size_t k = s.dist.k();
  const std::size_t i = s.action_index;
  std::vector<double> grad(k);
  for (std::size_t y = 0; y < k; ++y) {
    const double pi_y = s.dist.probs[y];
    grad[y] = (y == i) ? s.advantage * (pi_y - 1.0) : s.advantage * pi_y;
  }
  return grad;
}

std::vector<double> ra2c_logit_gradient(const LossSample& s, double log_zero) {
  check_sample(s, false);
  require(log_zero < 0.0, "ra2c_logit_gradient: log_zero must be strictly negative");
  const std::size_t k = s.dist.k();
  std::vector<double> grad(k, 0.0);
  if (s.advantage == 0.0) return grad;
  const std::size_t i = s.action_index;
  const double pi_i = s.dist.probs[i];
  const double a_z = s.advantage * log_zero;
  for (std::size_t y = 0; y < k; ++y) {
    const double pi_y = s.dist.probs[y];
    grad[y] = (y == i) ? -a_z * pi_y * (pi_y - 1.0) : -a_z * pi_y * pi_i;
  }
  return grad;
}

std::vector<double> ppo_logit_gradient(const LossSample& s, double clip_epsilon) {
  const std::size_t k = s.dist.k();
  if (ppo_sample_clipped(s, clip_epsilon)) return std::vector<double>(k, 0.0);
  const std::size_t i = s.action_index;
  const double pi_i = s.dist.probs[i];
  std::vector<double> grad(k);
  for (std::size_t y = 0; y < k; ++y) {
    const double pi_y = s.dist.probs[y];
    grad[y] = (y == i) ? s.advantage * pi_i * (pi_i - 1.0) / s.old_prob
                       : s.advantage * pi_i * pi_y / s.old_prob;
  }
  return grad;
}

std::vector<double> rppo_logit_gradient(const LossSample& s, double log_zero, double clip_epsilon) {
  const std::size_t k = s.dist.k();
  if (ppo_sample_clipped(s, clip_epsilon)) return std::vector<double>(k, 0.0);
  std::vector<double> grad = ra2c_logit_gradient(s, log_zero);
  for (double& g : grad) g /= s.old_prob;
  return grad;
}

std::vector<double> analytic_logit_gradient(const LossSample& s, const SymmetricLossConfig& cfg) {
  cfg.validate();
  std::vector<double> forward;
  std::vector<double> reverse;
  if (cfg.algorithm == Algorithm::a2c) {
    forward = a2c_logit_gradient(s);
    reverse = ra2c_logit_gradient(s, cfg.log_zero);
  } else {
    forward = ppo_logit_gradient(s, cfg.clip_epsilon);
    reverse = rppo_logit_gradient(s, cfg.log_zero, cfg.clip_epsilon);
  }
  std::vector<double> grad(forward.size());
  for (std::size_t y = 0; y < grad.size(); ++y)
    grad[y] = cfg.alpha * forward[y] + cfg.beta * reverse[y];
  return grad;
}

std::vector<double> entropy_logit_gradient(const ActionDistribution& dist) {
  const double h = dist.entropy();
  std::vector<double> grad(dist.k());
  for (std::size_t y = 0; y < dist.k(); ++y) {
    const double p = dist.probs[y];
    grad[y] = (p > 0.0) ? -p * (std::log(p) + h) : 0.0;
  }
  return grad;
}

}  // namespace symrl
