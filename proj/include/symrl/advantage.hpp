#ifndef SYMRL_ADVANTAGE_HPP_
#define SYMRL_ADVANTAGE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace symrl {

struct GaeConfig {
  double gamma = 0.99;
  double lam = 0.95;
  bool normalize = false;
  double norm_epsilon = 1e-8;

  void validate() const;
};

struct AdvantageEstimate {
  std::vector<double> raw;
  std::optional<std::vector<double>> normalized;
  std::vector<double> returns;  // value targets: A_t + V_t
  std::optional<double> sign_flip_rate;
};

// delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t
// A_t     = delta_t + gamma * lam * (1 - done_t) * A_{t+1}
// with V_T = bootstrap_value. When cfg.normalize is set the normalized
// sequence and its sign-flip rate are filled in as well.
AdvantageEstimate compute_gae(std::span<const double> rewards, std::span<const double> values,
                              double bootstrap_value, std::span<const std::uint8_t> dones,
                              const GaeConfig& cfg);

struct NormalizedAdvantages {
  std::vector<double> values;
  double sign_flip_rate = 0.0;
};

// Standardizes to zero mean / unit population std (epsilon added to the std).
// The flip rate is the fraction of nonzero raw entries whose sign strictly
// differs after normalization; zero raw entries are excluded from the
// denominator, and a nonzero entry mapped to exactly zero counts as a flip.
NormalizedAdvantages normalize_advantages(std::span<const double> raw, double norm_epsilon);

}  // namespace symrl

#endif  // SYMRL_ADVANTAGE_HPP_
