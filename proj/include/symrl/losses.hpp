#ifndef SYMRL_LOSSES_HPP_
#define SYMRL_LOSSES_HPP_

#include <cstddef>
#include <vector>

#include "symrl/distributions.hpp"

namespace symrl {

enum class Algorithm { a2c, ppo };

// alpha scales the plain policy loss, beta the reverse loss; beta = 0 recovers
// the plain algorithm exactly. log_zero is the strictly negative stand-in for
// log 0 used by the reverse losses (-1 throughout the experiments).
struct SymmetricLossConfig {
  double alpha = 0.5;
  double beta = 1.0;
  double log_zero = -1.0;
  double clip_epsilon = 0.2;
  Algorithm algorithm = Algorithm::ppo;

  void validate() const;
};

// One sampled action with its advantage. old_prob is the behavior-policy
// probability recorded at collection time; only the PPO family reads it.
struct LossSample {
  ActionDistribution dist;
  std::size_t action_index = 0;
  double advantage = 0.0;
  double old_prob = 1.0;
};

struct LossValue {
  double total = 0.0;
  double forward_part = 0.0;
  double reverse_part = 0.0;
  bool clipped = false;
};

// ---------------------------------------------------------------------------
// Sample-wise loss values.
//
// The reverse losses report the magnitude form |A|*|log_zero|*(1 - pi_i)
// (divided by old_prob for the PPO variant), which is the value both advantage
// branches of the defining sums evaluate to. Zero-advantage samples contribute
// zero by convention. The *_objective functions below are the signed
// differentiable forms the gradients descend.
// ---------------------------------------------------------------------------

// -A * log pi_i. Requires pi_i > 0.
double a2c_loss(const LossSample& s);

// |A| * |log_zero| * (1 - pi_i); 0 when A == 0.
double ra2c_loss(const LossSample& s, double log_zero);

struct PpoLoss {
  double value = 0.0;
  bool clipped = false;  // true iff the min strictly selects the clipped branch
};

// -min(r*A, clip(r, 1-eps, 1+eps)*A) with r = pi_i / old_prob.
PpoLoss ppo_loss(const LossSample& s, double clip_epsilon);

// Reverse PPO value; 0 for samples whose PPO min/clip gate is closed.
double rppo_loss(const LossSample& s, double log_zero, double clip_epsilon);

// alpha * forward + beta * reverse, dispatching on cfg.algorithm.
LossValue symmetric_loss(const LossSample& s, const SymmetricLossConfig& cfg);

// ---------------------------------------------------------------------------
// Signed training objectives.
//
// -A * log_zero * (1 - pi_i): equal to the reverse loss value for A > 0 and
// its negation for A < 0. This is the scalar whose exact logit derivative the
// reverse gradients below implement, so that a positive advantage pulls
// probability mass onto the sampled action and a negative advantage pushes it
// off, in the same direction as the plain loss for every logit component.
// ---------------------------------------------------------------------------

double ra2c_objective(const LossSample& s, double log_zero);
double rppo_objective(const LossSample& s, double log_zero, double clip_epsilon);
double symmetric_objective(const LossSample& s, const SymmetricLossConfig& cfg);

// ---------------------------------------------------------------------------
// Closed-form gradients with respect to the k logits.
//
//   plain A2C:    y == i: A*(pi_i - 1)          y != i: A*pi_y
//   reverse A2C:  y == i: -A*Z*pi_y*(pi_y - 1)  y != i: -A*Z*pi_y*pi_i
//   plain PPO:    the A2C rows scaled by pi_i / old_prob (zero when clipped)
//   reverse PPO:  the reverse A2C rows divided by old_prob (zero when clipped)
//
// with Z = log_zero. Both PPO-family gradients are gated by the same min/clip
// mask: a clipped sample contributes no gradient at all.
// ---------------------------------------------------------------------------

std::vector<double> a2c_logit_gradient(const LossSample& s);
std::vector<double> ra2c_logit_gradient(const LossSample& s, double log_zero);
std::vector<double> ppo_logit_gradient(const LossSample& s, double clip_epsilon);
std::vector<double> rppo_logit_gradient(const LossSample& s, double log_zero, double clip_epsilon);

// alpha * forward gradient + beta * reverse gradient per cfg.algorithm.
std::vector<double> analytic_logit_gradient(const LossSample& s, const SymmetricLossConfig& cfg);

// True when the PPO min/clip gate is closed for this sample (no gradient).
bool ppo_sample_clipped(const LossSample& s, double clip_epsilon);

// d(entropy)/dz_y = -pi_y * (log pi_y + entropy); used for the entropy bonus.
std::vector<double> entropy_logit_gradient(const ActionDistribution& dist);

}  // namespace symrl

#endif  // SYMRL_LOSSES_HPP_
