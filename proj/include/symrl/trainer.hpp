#ifndef SYMRL_TRAINER_HPP_
#define SYMRL_TRAINER_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symrl/advantage.hpp"
#include "symrl/distributions.hpp"
#include "symrl/envs.hpp"
#include "symrl/losses.hpp"
#include "symrl/network.hpp"

namespace symrl {

// Rollout storage, env-major: sample index = env * n_steps + t. old_probs are
// recorded at collection time and never recomputed.
struct TransitionBatch {
  int n_envs = 0;
  int n_steps = 0;
  std::size_t obs_dim = 0;
  std::size_t action_dims = 1;

  std::vector<double> observations;       // size * obs_dim
  std::vector<std::size_t> action_indices;  // size * action_dims
  std::vector<double> old_probs_per_dim;  // size * action_dims
  std::vector<double> old_probs;          // joint probability per sample
  std::vector<double> clean_rewards;
  std::vector<double> noisy_rewards;
  std::vector<double> value_predictions;
  std::vector<std::uint8_t> dones;        // episode ended at this step
  std::vector<double> bootstrap_values;   // per env, V of the observation after the last step

  std::size_t size() const { return static_cast<std::size_t>(n_envs) * n_steps; }
  std::span<const double> obs(std::size_t sample) const {
    return {observations.data() + sample * obs_dim, obs_dim};
  }
};

struct TrainerConfig {
  Algorithm algorithm = Algorithm::ppo;
  SymmetricLossConfig loss;
  GaeConfig gae;
  int n_envs = 8;
  int n_steps = 64;
  int epochs_per_update = 4;
  int minibatch_size = 64;
  double learning_rate = 3e-4;
  int total_updates = 100;
  double entropy_coef = 0.0;
  double value_coef = 0.5;
  std::optional<double> max_grad_norm = 0.5;
  std::uint64_t seed = 0;

  std::vector<std::size_t> hidden = {64, 64};
  std::size_t bins = 11;  // discretization bins per dimension for continuous envs
  int eval_every = 10;
  int eval_episodes = 10;
  bool eval_greedy = false;
  bool debug_gradient_probe = false;
  // Reference path with the reverse term removed entirely (not just beta = 0);
  // exercised by the degeneracy checks.
  bool omit_reverse_term = false;

  void validate() const;

  static TrainerConfig a2c_defaults();  // n_envs = 4, n_steps = 8, single epoch
  static TrainerConfig ppo_defaults();
};

struct UpdateMetrics {
  int update_index = 0;
  std::int64_t env_steps = 0;
  double mean_episode_return_clean = 0.0;
  double policy_loss_forward = 0.0;
  double policy_loss_reverse = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  std::optional<double> adv_sign_flip_rate;  // present only when normalization is on
  double clipped_fraction = 0.0;
  double grad_norm = 0.0;
};

struct EvalResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<double> episode_returns;
};

struct NoiseSpec {
  NoiseChannel::Kind kind = NoiseChannel::Kind::none;
  double param = 0.0;
};

// On-policy trainer for one environment family. Rollout collection, updates
// and evaluation all draw from streams derived deterministically from the
// seed, so a (config, seed) pair fixes the entire metrics stream.
class Trainer {
 public:
  Trainer(const std::string& env_name, const NoiseSpec& noise, const TrainerConfig& cfg);

  TransitionBatch collect_rollout();
  UpdateMetrics update();  // collect + one A2C or PPO update
  UpdateMetrics update_from_batch(const TransitionBatch& batch);
  EvalResult evaluate(int episodes);

  const TrainerConfig& config() const { return cfg_; }
  const ParameterVector& parameters() const { return params_; }
  const NetworkSpec& network_spec() const { return spec_; }
  std::size_t action_dims() const { return action_dims_; }
  std::size_t actions_per_dim() const { return actions_per_dim_; }
  int updates_done() const { return update_count_; }

  // Per-sample clip gates of the most recent PPO update, one entry per
  // sample visit, in visit order (diagnostics for gating checks).
  const std::vector<std::uint8_t>& last_clip_mask() const { return last_clip_mask_; }

 private:
  struct SampleTerms {
    HeadOutputs head_gradients;
    double forward_loss = 0.0;
    double reverse_loss = 0.0;
    double value_error = 0.0;  // v - R
    double entropy = 0.0;
    bool clipped = false;
  };

  // Running sums across the sample visits of one update.
  struct Tally {
    double forward = 0.0, reverse = 0.0, value = 0.0, entropy = 0.0;
    std::size_t clipped = 0, visits = 0;
    std::size_t flips = 0, nonzero = 0;
    double grad_norm_sum = 0.0;
    int optimizer_steps = 0;
  };

  FactorizedDistribution policy_distribution(const HeadOutputs& outputs) const;
  SampleTerms sample_terms(const ParameterVector& params, const TransitionBatch& batch,
                           std::size_t sample, double advantage, double value_target) const;
  void apply_minibatch(const TransitionBatch& batch, std::span<const std::size_t> indices,
                       std::span<const double> advantages, std::span<const double> returns,
                       Tally& tally, bool probe_this_step);
  double minibatch_objective(const ParameterVector& params, const TransitionBatch& batch,
                             std::span<const std::size_t> indices, std::span<const double> advantages,
                             std::span<const double> returns,
                             std::span<const std::uint8_t> frozen_gates) const;
  void gradient_probe(const TransitionBatch& batch, std::span<const std::size_t> indices,
                      std::span<const double> advantages, std::span<const double> returns,
                      const ParameterVector& analytic_grad);
  ActionValue to_env_action(std::span<const std::size_t> indices) const;
  void note_episode_end(double episode_return);

  TrainerConfig cfg_;
  NoiseSpec noise_spec_;
  std::string env_name_;

  NetworkSpec spec_;
  ParameterLayout layout_;
  ParameterVector params_;
  AdamOptimizer adam_;
  std::size_t action_dims_ = 1;
  std::size_t actions_per_dim_ = 2;
  std::optional<Discretizer> discretizer_;

  std::vector<std::unique_ptr<Environment>> envs_;
  std::vector<RandomStream> env_rng_;
  std::vector<RandomStream> action_rng_;
  std::vector<NoiseChannel> noise_;
  std::vector<std::vector<double>> current_obs_;
  std::vector<double> episode_return_clean_;
  std::deque<double> recent_episode_returns_;

  std::unique_ptr<Environment> eval_env_;
  RandomStream eval_rng_;
  RandomStream shuffle_rng_;
  RandomStream probe_rng_;

  int update_count_ = 0;
  std::vector<std::uint8_t> last_clip_mask_;
};

// Free-function forms of the update entry points.
UpdateMetrics a2c_update(Trainer& trainer);
UpdateMetrics ppo_update(Trainer& trainer);

}  // namespace symrl

#endif  // SYMRL_TRAINER_HPP_
