#include "symrl/envs.hpp"

#include <algorithm>
#include <cmath>

#include "symrl/errors.hpp"

namespace symrl {

namespace {

std::size_t discrete_action(const ActionValue& action, std::size_t n, const char* env) {
  const std::size_t* idx = std::get_if<std::size_t>(&action);
  require(idx != nullptr, std::string(env) + ": expected a discrete action index");
  require(*idx < n, std::string(env) + ": action index out of range");
  return *idx;
}

}  // namespace

// ---------------------------------------------------------------------------
// GridWorld
// ---------------------------------------------------------------------------

ActionSpace GridWorld::action_space() const {
  ActionSpace space;
  space.kind = ActionSpace::Kind::discrete;
  space.n_actions = 4;
  return space;
}

std::vector<double> GridWorld::observation() const {
  const double scale = 1.0 / (kSize - 1);
  return {agent_x_ * scale, agent_y_ * scale, (kSize - 1) * scale, (kSize - 1) * scale};
}

EnvState GridWorld::reset(RandomStream&) {
  agent_x_ = 0;
  agent_y_ = 0;
  steps_ = 0;
  done_ = false;
  return EnvState{observation(), false, 0};
}

StepResult GridWorld::step(const ActionValue& action) {
  require(!done_, "gridworld: step after episode end; call reset");
  const std::size_t a = discrete_action(action, 4, "gridworld");

  int dx = 0, dy = 0;
  switch (a) {
    case 0: dy = -1; break;  // up
    case 1: dy = 1; break;   // down
    case 2: dx = -1; break;  // left
    case 3: dx = 1; break;   // right
  }
  agent_x_ = std::clamp(agent_x_ + dx, 0, kSize - 1);
  agent_y_ = std::clamp(agent_y_ + dy, 0, kSize - 1);
  ++steps_;

  StepResult result;
  result.next_observation = observation();
  const bool at_goal = (agent_x_ == kSize - 1 && agent_y_ == kSize - 1);
  if (at_goal) {
    result.reward = 1.0;
    result.terminal = true;
  } else {
    result.reward = 0.0;
    result.truncated = (steps_ >= kMaxSteps);
  }
  done_ = result.terminal || result.truncated;
  return result;
}

// ---------------------------------------------------------------------------
// CartPole
// ---------------------------------------------------------------------------

namespace {
constexpr double kGravity = 9.8;
constexpr double kMassCart = 1.0;
constexpr double kMassPole = 0.1;
constexpr double kTotalMass = kMassCart + kMassPole;
constexpr double kPoleHalfLength = 0.5;
constexpr double kPoleMassLength = kMassPole * kPoleHalfLength;
constexpr double kForceMag = 10.0;
constexpr double kDtCartPole = 0.02;
}  // namespace

void CartPole::integrate(double force, double& x, double& x_dot, double& theta, double& theta_dot) {
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double temp = (force + kPoleMassLength * theta_dot * theta_dot * sin_t) / kTotalMass;
  const double theta_acc =
      (kGravity * sin_t - cos_t * temp) /
      (kPoleHalfLength * (4.0 / 3.0 - kMassPole * cos_t * cos_t / kTotalMass));
  const double x_acc = temp - kPoleMassLength * theta_acc * cos_t / kTotalMass;
  x += kDtCartPole * x_dot;
  x_dot += kDtCartPole * x_acc;
  theta += kDtCartPole * theta_dot;
  theta_dot += kDtCartPole * theta_acc;
}

ActionSpace CartPole::action_space() const {
  ActionSpace space;
  space.kind = ActionSpace::Kind::discrete;
  space.n_actions = 2;
  return space;
}

std::vector<double> CartPole::observation() const { return {x_, x_dot_, theta_, theta_dot_}; }

bool CartPole::violated() const {
  return std::abs(theta_) > kThetaLimit || std::abs(x_) > kXLimit;
}

EnvState CartPole::reset(RandomStream& rng) {
  x_ = rng.uniform(-0.05, 0.05);
  x_dot_ = rng.uniform(-0.05, 0.05);
  theta_ = rng.uniform(-0.05, 0.05);
  theta_dot_ = rng.uniform(-0.05, 0.05);
  steps_ = 0;
  done_ = false;
  return EnvState{observation(), violated(), 0};
}

StepResult CartPole::step(const ActionValue& action) {
  require(!done_, "cartpole: step after episode end; call reset");
  const std::size_t a = discrete_action(action, 2, "cartpole");
  const double force = (a == 1) ? kForceMag : -kForceMag;
  integrate(force, x_, x_dot_, theta_, theta_dot_);
  ++steps_;

  StepResult result;
  result.next_observation = observation();
  result.terminal = violated();
  result.reward = result.terminal ? 0.0 : 1.0;
  result.truncated = !result.terminal && steps_ >= kMaxSteps;
  done_ = result.terminal || result.truncated;
  return result;
}

// ---------------------------------------------------------------------------
// PointMass
// ---------------------------------------------------------------------------

ActionSpace PointMass::action_space() const {
  ActionSpace space;
  space.kind = ActionSpace::Kind::continuous;
  space.low = {-1.0, -1.0};
  space.high = {1.0, 1.0};
  return space;
}

std::vector<double> PointMass::observation() const { return {px_, py_, vx_, vy_}; }

EnvState PointMass::reset(RandomStream& rng) {
  px_ = rng.uniform(-1.0, 1.0);
  py_ = rng.uniform(-1.0, 1.0);
  vx_ = 0.0;
  vy_ = 0.0;
  steps_ = 0;
  done_ = false;
  return EnvState{observation(), false, 0};
}

StepResult PointMass::step(const ActionValue& action) {
  require(!done_, "pointmass: step after episode end; call reset");
  const std::vector<double>* a = std::get_if<std::vector<double>>(&action);
  require(a != nullptr && a->size() == 2, "pointmass: expected a 2-d continuous action");

  double ax = (*a)[0];
  double ay = (*a)[1];
  if (ax < -1.0 || ax > 1.0 || ay < -1.0 || ay > 1.0) {
    ++clamp_count_;
    ax = std::clamp(ax, -1.0, 1.0);
    ay = std::clamp(ay, -1.0, 1.0);
  }

  vx_ = std::clamp(vx_ + ax * kDt, -kVelLimit, kVelLimit);
  vy_ = std::clamp(vy_ + ay * kDt, -kVelLimit, kVelLimit);
  px_ += vx_ * kDt;
  py_ += vy_ * kDt;
  ++steps_;

  StepResult result;
  result.next_observation = observation();
  result.reward = -std::hypot(px_, py_) - 0.01 * (ax * ax + ay * ay);
  result.truncated = steps_ >= kMaxSteps;
  done_ = result.truncated;
  return result;
}

std::unique_ptr<Environment> make_environment(const std::string& name) {
  if (name == "gridworld") return std::make_unique<GridWorld>();
  if (name == "cartpole") return std::make_unique<CartPole>();
  if (name == "pointmass") return std::make_unique<PointMass>();
  throw ValidationError("unknown environment '" + name + "'");
}

// ---------------------------------------------------------------------------
// NoiseChannel
// ---------------------------------------------------------------------------

NoiseChannel NoiseChannel::none() { return NoiseChannel{Kind::none, 0.0, RandomStream(0)}; }

NoiseChannel NoiseChannel::bsc(double crossover, RandomStream rng) {
  require(crossover >= 0.0 && crossover <= 1.0, "NoiseChannel: crossover must lie in [0,1]");
  return NoiseChannel{Kind::bsc, crossover, rng};
}

NoiseChannel NoiseChannel::gaussian(double sigma, RandomStream rng) {
  require(sigma >= 0.0, "NoiseChannel: sigma must be >= 0");
  return NoiseChannel{Kind::gaussian, sigma, rng};
}

double NoiseChannel::apply(double clean_reward) {
  switch (kind) {
    case Kind::none:
      return clean_reward;
    case Kind::bsc: {
      require(clean_reward == 0.0 || clean_reward == 1.0,
              "NoiseChannel: BSC requires a reward in {0,1}");
      const bool flip = rng.uniform() < param;
      return flip ? 1.0 - clean_reward : clean_reward;
    }
    case Kind::gaussian:
      return clean_reward + rng.normal(0.0, param);
  }
  return clean_reward;
}

double apply_noise(NoiseChannel& channel, double clean_reward) {
  return channel.apply(clean_reward);
}

}  // namespace symrl
