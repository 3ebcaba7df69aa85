#ifndef SYMRL_ENVS_HPP_
#define SYMRL_ENVS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "symrl/rng.hpp"

namespace symrl {

struct EnvState {
  std::vector<double> observation;
  bool terminal = false;
  int steps_elapsed = 0;
};

struct StepResult {
  std::vector<double> next_observation;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;  // mutually exclusive with terminal; either ends the episode
};

// Discrete environments take an action index; continuous ones a real vector.
using ActionValue = std::variant<std::size_t, std::vector<double>>;

struct ActionSpace {
  enum class Kind { discrete, continuous } kind = Kind::discrete;
  std::size_t n_actions = 0;        // discrete
  std::vector<double> low, high;    // continuous box
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::string name() const = 0;
  virtual std::size_t observation_dim() const = 0;
  virtual ActionSpace action_space() const = 0;
  // True when every clean reward lies in {0,1} (required for BSC noise).
  virtual bool binary_rewards() const = 0;
  virtual EnvState reset(RandomStream& rng) = 0;
  virtual StepResult step(const ActionValue& action) = 0;
};

// 8x8 gridworld, fixed corners: agent starts at (0,0), goal at (7,7).
// Actions {up, down, left, right}; walls block; reward 1 on reaching the goal
// (terminal), 0 otherwise; truncation after 64 steps.
class GridWorld : public Environment {
 public:
  static constexpr int kSize = 8;
  static constexpr int kMaxSteps = 64;

  std::string name() const override { return "gridworld"; }
  std::size_t observation_dim() const override { return 4; }
  ActionSpace action_space() const override;
  bool binary_rewards() const override { return true; }
  EnvState reset(RandomStream& rng) override;
  StepResult step(const ActionValue& action) override;

 private:
  std::vector<double> observation() const;
  int agent_x_ = 0, agent_y_ = 0;
  int steps_ = 0;
  bool done_ = true;
};

// Cart-pole balancing, Euler integration with dt = 0.02 and force +-10.
// Reward 1 per step that ends non-terminal, 0 on the terminating step;
// terminal when |theta| > 12 degrees or |x| > 2.4; truncation at 500 steps.
class CartPole : public Environment {
 public:
  static constexpr int kMaxSteps = 500;

  std::string name() const override { return "cartpole"; }
  std::size_t observation_dim() const override { return 4; }
  ActionSpace action_space() const override;
  bool binary_rewards() const override { return true; }
  EnvState reset(RandomStream& rng) override;
  StepResult step(const ActionValue& action) override;

  // One Euler step of the physics for an arbitrary force; exposed so the
  // dynamics can be probed directly (e.g. unforced pole-drop checks).
  static void integrate(double force, double& x, double& x_dot, double& theta, double& theta_dot);

  static constexpr double kThetaLimit = 12.0 * 3.14159265358979323846 / 180.0;
  static constexpr double kXLimit = 2.4;

 private:
  std::vector<double> observation() const;
  bool violated() const;
  double x_ = 0, x_dot_ = 0, theta_ = 0, theta_dot_ = 0;
  int steps_ = 0;
  bool done_ = true;
};

// Velocity-integrator point mass on the plane driven toward the origin.
// Action is an acceleration in [-1,1]^2 (clamped otherwise); dt = 0.05 with
// velocity clamped to +-2. Reward -|pos - goal| - 0.01*|a|^2; truncation at
// 200 steps, no terminal state.
class PointMass : public Environment {
 public:
  static constexpr int kMaxSteps = 200;
  static constexpr double kDt = 0.05;
  static constexpr double kVelLimit = 2.0;

  std::string name() const override { return "pointmass"; }
  std::size_t observation_dim() const override { return 4; }
  ActionSpace action_space() const override;
  bool binary_rewards() const override { return false; }
  EnvState reset(RandomStream& rng) override;
  StepResult step(const ActionValue& action) override;

  // Number of steps so far whose action needed clamping into [-1,1]^2.
  std::int64_t action_clamp_count() const { return clamp_count_; }

 private:
  std::vector<double> observation() const;
  double px_ = 0, py_ = 0, vx_ = 0, vy_ = 0;
  int steps_ = 0;
  bool done_ = true;
  std::int64_t clamp_count_ = 0;
};

std::unique_ptr<Environment> make_environment(const std::string& name);

// Reward-perturbation channel. BSC flips a {0,1} reward with the crossover
// probability; the Gaussian channel adds zero-mean noise of the given sigma.
struct NoiseChannel {
  enum class Kind { none, bsc, gaussian };

  Kind kind = Kind::none;
  double param = 0.0;  // crossover probability or sigma
  RandomStream rng{0};

  static NoiseChannel none();
  static NoiseChannel bsc(double crossover, RandomStream rng);
  static NoiseChannel gaussian(double sigma, RandomStream rng);

  double apply(double clean_reward);
};

double apply_noise(NoiseChannel& channel, double clean_reward);

}  // namespace symrl

#endif  // SYMRL_ENVS_HPP_
