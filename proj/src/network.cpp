#include "symrl/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symrl/errors.hpp"

namespace symrl {

namespace {

// y += W x, with W stored row-major (rows x cols).
void affine(std::span<const double> w, std::span<const double> b, std::span<const double> x,
            std::span<double> y) {
  const std::size_t rows = y.size();
  const std::size_t cols = x.size();
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* wr = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = acc;
  }
}

struct ForwardTrace {
  // Activations per hidden layer (post-tanh); index 0 is the input.
  std::vector<std::vector<double>> activations;
  HeadOutputs heads;
};

ForwardTrace run_forward(const NetworkSpec& spec, const ParameterVector& params,
                         std::span<const double> input, const ParameterLayout& layout) {
  ForwardTrace trace;
  trace.activations.reserve(spec.hidden.size() + 1);
  trace.activations.emplace_back(input.begin(), input.end());

  const double* p = params.values.data();
  for (std::size_t l = 0; l < spec.hidden.size(); ++l) {
    const TensorSlot& w = layout.slots[2 * l];
    const TensorSlot& b = layout.slots[2 * l + 1];
    std::vector<double> out(spec.hidden[l]);
    affine({p + w.offset, w.size()}, {p + b.offset, b.size()}, trace.activations.back(), out);
    for (double& v : out) v = std::tanh(v);
    trace.activations.push_back(std::move(out));
  }

  const std::size_t head_base = 2 * spec.hidden.size();
  for (std::size_t h = 0; h < spec.heads.size(); ++h) {
    const TensorSlot& w = layout.slots[head_base + 2 * h];
    const TensorSlot& b = layout.slots[head_base + 2 * h + 1];
    std::vector<double> out(spec.heads[h].dim);
    affine({p + w.offset, w.size()}, {p + b.offset, b.size()}, trace.activations.back(), out);
    trace.heads[spec.heads[h].name] = std::move(out);
  }
  return trace;
}

}  // namespace

void NetworkSpec::validate() const {
  require(input_dim >= 1, "NetworkSpec: input_dim must be >= 1");
  require(!heads.empty(), "NetworkSpec: at least one head required");
  for (std::size_t w : hidden) require(w >= 1, "NetworkSpec: hidden widths must be >= 1");
  for (const HeadSpec& h : heads) {
    require(h.dim >= 1, "NetworkSpec: head dim must be >= 1");
    require(!h.name.empty(), "NetworkSpec: head name must be non-empty");
  }
}

std::size_t NetworkSpec::head_dim(const std::string& name) const {
  for (const HeadSpec& h : heads)
    if (h.name == name) return h.dim;
  throw ContractViolation("NetworkSpec: unknown head '" + name + "'");
}

ParameterLayout ParameterLayout::for_network(const NetworkSpec& spec) {
  spec.validate();
  ParameterLayout layout;
  std::size_t in = spec.input_dim;
  std::size_t offset = 0;
  auto push = [&](const std::string& name, std::size_t rows, std::size_t cols) {
    layout.slots.push_back(TensorSlot{name, rows, cols, offset});
    offset += rows * cols;
  };
  for (std::size_t l = 0; l < spec.hidden.size(); ++l) {
    push("hidden" + std::to_string(l) + ".weight", spec.hidden[l], in);
    push("hidden" + std::to_string(l) + ".bias", spec.hidden[l], 1);
    in = spec.hidden[l];
  }
  for (const HeadSpec& h : spec.heads) {
    push(h.name + ".weight", h.dim, in);
    push(h.name + ".bias", h.dim, 1);
  }
  layout.total = offset;
  return layout;
}

const TensorSlot& ParameterLayout::slot(const std::string& name) const {
  for (const TensorSlot& s : slots)
    if (s.name == name) return s;
  throw ContractViolation("ParameterLayout: unknown slot '" + name + "'");
}

HeadOutputs forward(const NetworkSpec& spec, const ParameterVector& params,
                    std::span<const double> input) {
  return forward(spec, ParameterLayout::for_network(spec), params, input);
}

HeadOutputs forward(const NetworkSpec& spec, const ParameterLayout& layout,
                    const ParameterVector& params, std::span<const double> input) {
  require(input.size() == spec.input_dim, "forward: input length does not match spec.input_dim");
  require(params.size() == layout.total, "forward: parameter count does not match spec");
  return run_forward(spec, params, input, layout).heads;
}

ParameterVector backward(const NetworkSpec& spec, const ParameterVector& params,
                         std::span<const double> input, const HeadOutputs& head_gradients) {
  const ParameterLayout layout = ParameterLayout::for_network(spec);
  ParameterVector grad = ParameterVector::zeros(layout.total);
  accumulate_backward(spec, layout, params, input, head_gradients, grad);
  return grad;
}

void accumulate_backward(const NetworkSpec& spec, const ParameterLayout& layout,
                         const ParameterVector& params, std::span<const double> input,
                         const HeadOutputs& head_gradients, ParameterVector& grad) {
  require(input.size() == spec.input_dim, "backward: input length does not match spec.input_dim");
  require(params.size() == layout.total, "backward: parameter count does not match spec");
  require(grad.size() == layout.total, "backward: gradient accumulator size mismatch");
  require(head_gradients.size() == spec.heads.size(),
          "backward: head_gradients must name every head exactly once");

  const ForwardTrace trace = run_forward(spec, params, input, layout);
  const double* p = params.values.data();
  double* g = grad.values.data();

  const std::vector<double>& last = trace.activations.back();
  std::vector<double> d_last(last.size(), 0.0);

  const std::size_t head_base = 2 * spec.hidden.size();
  for (std::size_t h = 0; h < spec.heads.size(); ++h) {
    const HeadSpec& head = spec.heads[h];
    auto it = head_gradients.find(head.name);
    require(it != head_gradients.end(), "backward: missing gradient for head '" + head.name + "'");
    const std::vector<double>& gh = it->second;
    require(gh.size() == head.dim, "backward: gradient dim mismatch for head '" + head.name + "'");

    const TensorSlot& w = layout.slots[head_base + 2 * h];
    const TensorSlot& b = layout.slots[head_base + 2 * h + 1];
    for (std::size_t r = 0; r < head.dim; ++r) {
      g[b.offset + r] += gh[r];
      const double* wr = p + w.offset + r * last.size();
      double* gwr = g + w.offset + r * last.size();
      for (std::size_t c = 0; c < last.size(); ++c) {
        gwr[c] += gh[r] * last[c];
        d_last[c] += gh[r] * wr[c];
      }
    }
  }

  // Walk the hidden stack in reverse; d_out is dL/d(post-tanh activation).
  std::vector<double> d_out = std::move(d_last);
  for (std::size_t l = spec.hidden.size(); l-- > 0;) {
    const TensorSlot& w = layout.slots[2 * l];
    const TensorSlot& b = layout.slots[2 * l + 1];
    const std::vector<double>& out = trace.activations[l + 1];
    const std::vector<double>& in = trace.activations[l];

    std::vector<double> d_pre(out.size());
    for (std::size_t r = 0; r < out.size(); ++r) d_pre[r] = d_out[r] * (1.0 - out[r] * out[r]);

    std::vector<double> d_in(in.size(), 0.0);
    for (std::size_t r = 0; r < out.size(); ++r) {
      g[b.offset + r] += d_pre[r];
      const double* wr = p + w.offset + r * in.size();
      double* gwr = g + w.offset + r * in.size();
      for (std::size_t c = 0; c < in.size(); ++c) {
        gwr[c] += d_pre[r] * in[c];
        d_in[c] += d_pre[r] * wr[c];
      }
    }
    d_out = std::move(d_in);
  }
}

ParameterVector finite_difference_gradient(const std::function<double(const ParameterVector&)>& loss_fn,
                                           const ParameterVector& params, double step) {
  require(step > 0.0, "finite_difference_gradient: step must be > 0");
  ParameterVector probe = params;
  ParameterVector grad = ParameterVector::zeros(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double original = probe[i];
    probe[i] = original + step;
    const double f_plus = loss_fn(probe);
    probe[i] = original - step;
    const double f_minus = loss_fn(probe);
    probe[i] = original;
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
      throw NumericError("finite_difference_gradient: loss is not finite");
    grad[i] = (f_plus - f_minus) / (2.0 * step);
  }
  return grad;
}

GradientReport GradientReport::compare(const ParameterVector& analytic, const ParameterVector& numeric,
                                       double abs_floor) {
  require(analytic.size() == numeric.size(), "GradientReport: size mismatch");
  GradientReport report;
  report.per_parameter_diffs.resize(analytic.size());
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double diff = std::abs(analytic[i] - numeric[i]);
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), abs_floor});
    report.per_parameter_diffs[i] = diff / scale;
    report.max_abs_diff = std::max(report.max_abs_diff, diff);
    report.max_rel_diff = std::max(report.max_rel_diff, diff / scale);
  }
  return report;
}

namespace {

// Fills a rows x cols slot with a gain-scaled orthogonal-style matrix:
// random normal entries, modified Gram-Schmidt along the shorter side.
void orthogonal_fill(double* w, std::size_t rows, std::size_t cols, double gain, RandomStream& rng) {
  std::vector<double> m(rows * cols);
  for (double& v : m) v = rng.normal();

  const bool by_rows = rows <= cols;
  const std::size_t vecs = by_rows ? rows : cols;
  const std::size_t len = by_rows ? cols : rows;
  auto at = [&](std::size_t v, std::size_t i) -> double& {
    return by_rows ? m[v * cols + i] : m[i * cols + v];
  };

  for (std::size_t v = 0; v < vecs; ++v) {
    for (std::size_t u = 0; u < v; ++u) {
      double dot = 0.0;
      for (std::size_t i = 0; i < len; ++i) dot += at(v, i) * at(u, i);
      for (std::size_t i = 0; i < len; ++i) at(v, i) -= dot * at(u, i);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < len; ++i) norm += at(v, i) * at(v, i);
    norm = std::sqrt(norm);
    if (norm < 1e-12) norm = 1.0;  // degenerate draw; keep the raw direction
    for (std::size_t i = 0; i < len; ++i) at(v, i) /= norm;
  }
  for (std::size_t i = 0; i < rows * cols; ++i) w[i] = gain * m[i];
}

}  // namespace

ParameterVector init_parameters(const NetworkSpec& spec, RandomStream& rng, const InitGains& gains) {
  const ParameterLayout layout = ParameterLayout::for_network(spec);
  ParameterVector params = ParameterVector::zeros(layout.total);
  for (const TensorSlot& s : layout.slots) {
    if (s.cols == 1) continue;  // biases stay zero
    double gain = gains.hidden;
    if (s.name.rfind("hidden", 0) != 0)
      gain = (s.name.rfind("policy", 0) == 0) ? gains.policy_head : gains.value_head;
    orthogonal_fill(params.values.data() + s.offset, s.rows, s.cols, gain, rng);
  }
  return params;
}

AdamOptimizer::AdamOptimizer(std::size_t n_params, double learning_rate, double beta1, double beta2,
                             double epsilon)
    : learning_rate_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      m_(n_params, 0.0),
      v_(n_params, 0.0) {}

void AdamOptimizer::step(ParameterVector& params, const ParameterVector& grad) {
  require(params.size() == m_.size() && grad.size() == m_.size(),
          "AdamOptimizer: parameter count changed");
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    const double gi = grad[i];
    if (!std::isfinite(gi)) throw NumericError("AdamOptimizer: non-finite gradient");
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * gi;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * gi * gi;
    const double m_hat = m_[i] / bc1;
    const double v_hat = v_[i] / bc2;
    params[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + epsilon_);
  }
}

double clip_grad_norm(ParameterVector& grad, double max_norm) {
  double sq = 0.0;
  for (double g : grad.values) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grad.values) g *= scale;
  }
  return norm;
}

}  // namespace symrl
