#ifndef SYMRL_NETWORK_HPP_
#define SYMRL_NETWORK_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symrl/rng.hpp"

namespace symrl {

struct HeadSpec {
  std::string name;
  std::size_t dim = 0;
};

// Dense tanh trunk with one or more linear output heads. The hidden stack may
// be empty, in which case heads read the input directly.
struct NetworkSpec {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden;
  std::vector<HeadSpec> heads;

  void validate() const;
  std::size_t head_dim(const std::string& name) const;
};

// One named sub-tensor inside the flat parameter vector. cols == 1 for biases.
struct TensorSlot {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 1;
  std::size_t offset = 0;

  std::size_t size() const { return rows * cols; }
};

// Deterministic flattening order: hidden layers in stack order (weight then
// bias), then heads in declaration order (weight then bias).
struct ParameterLayout {
  std::vector<TensorSlot> slots;
  std::size_t total = 0;

  static ParameterLayout for_network(const NetworkSpec& spec);
  const TensorSlot& slot(const std::string& name) const;
};

// Flat, ordered parameter storage; the layout lives with the NetworkSpec.
struct ParameterVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  static ParameterVector zeros(std::size_t n) { return ParameterVector{std::vector<double>(n, 0.0)}; }
};

using HeadOutputs = std::map<std::string, std::vector<double>>;

HeadOutputs forward(const NetworkSpec& spec, const ParameterVector& params,
                    std::span<const double> input);

// Exact reverse-mode gradient of sum_h head_gradients[h] . head_h(input)
// with respect to every parameter, in the same layout as params.
ParameterVector backward(const NetworkSpec& spec, const ParameterVector& params,
                         std::span<const double> input, const HeadOutputs& head_gradients);

// Hot-path overloads that reuse a precomputed layout; accumulate_backward adds
// the sample gradient into grad_accum instead of allocating a fresh vector.
HeadOutputs forward(const NetworkSpec& spec, const ParameterLayout& layout,
                    const ParameterVector& params, std::span<const double> input);
void accumulate_backward(const NetworkSpec& spec, const ParameterLayout& layout,
                         const ParameterVector& params, std::span<const double> input,
                         const HeadOutputs& head_gradients, ParameterVector& grad_accum);

// Central-difference oracle: (f(p + h e_i) - f(p - h e_i)) / (2h) per coordinate.
ParameterVector finite_difference_gradient(const std::function<double(const ParameterVector&)>& loss_fn,
                                           const ParameterVector& params, double step = 1e-5);

struct GradientReport {
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
  std::vector<double> per_parameter_diffs;

  // Relative difference uses max(|a|, |b|, abs_floor) in the denominator.
  static GradientReport compare(const ParameterVector& analytic, const ParameterVector& numeric,
                                double abs_floor = 1e-8);
};

struct InitGains {
  double hidden = 1.0;
  double policy_head = 0.01;  // heads whose name starts with "policy"
  double value_head = 1.0;    // every other head
};

// Orthogonal-style scaled init (Gram-Schmidt rows or columns), zero biases.
ParameterVector init_parameters(const NetworkSpec& spec, RandomStream& rng,
                                const InitGains& gains = InitGains{});

// First-order adaptive-moment update with bias correction.
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t n_params, double learning_rate, double beta1 = 0.9,
                double beta2 = 0.999, double epsilon = 1e-8);

  void step(ParameterVector& params, const ParameterVector& grad);

  double learning_rate() const { return learning_rate_; }
  std::int64_t steps_taken() const { return t_; }

 private:
  double learning_rate_;
  double beta1_;
  double beta2_;
  double epsilon_;
  std::int64_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

// Global-norm gradient clipping; returns the pre-clip norm.
double clip_grad_norm(ParameterVector& grad, double max_norm);

}  // namespace symrl

#endif  // SYMRL_NETWORK_HPP_
