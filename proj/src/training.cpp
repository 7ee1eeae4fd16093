#include "mfnnca/training.hpp"

#include <numeric>
#include <string>

#include "mfnnca/errors.hpp"

namespace mfnnca {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (momentum < 0.0 || momentum >= 1.0)
    throw ConfigError("momentum must lie in [0, 1)");
  if (epochs_per_phase < 1) throw ConfigError("epochs_per_phase must be >= 1");
}

Gradients Gradients::zeros_like(const Network& net) {
  Gradients g;
  g.g_w_in.assign(net.hidden_units(), std::vector<double>(net.input_dim(), 0.0));
  g.g_b_hidden.assign(net.hidden_units(), 0.0);
  g.g_w_out.assign(net.output_dim(), std::vector<double>(net.hidden_units(), 0.0));
  g.g_b_out.assign(net.output_dim(), 0.0);
  return g;
}

double sample_error(const std::vector<double>& desired, const std::vector<double>& actual) {
  if (desired.size() != actual.size())
    throw InputError("sample_error: length mismatch (" + std::to_string(desired.size()) +
                     " vs " + std::to_string(actual.size()) + ")");
  double s = 0.0;
  for (std::size_t k = 0; k < desired.size(); ++k) {
    const double e = desired[k] - actual[k];
    s += e * e;
  }
  return 0.5 * s;
}

double mean_squared_error(const Network& net, const PatternSet& patterns) {
  if (patterns.size() == 0)
    throw InputError("mean_squared_error: empty pattern set");
  double s = 0.0;
  for (std::size_t n = 0; n < patterns.size(); ++n)
    s += sample_error(patterns.targets[n], forward(net, patterns.inputs[n]).output);
  return s / static_cast<double>(patterns.size());
}

Gradients backprop_gradients(const Network& net, const std::vector<double>& input,
                             const std::vector<double>& desired) {
  if (desired.size() != net.output_dim())
    throw InputError("backprop_gradients: target length mismatch");
  const Activations act = forward(net, input);

  Gradients g = Gradients::zeros_like(net);
  // delta_k = -(d_k - y_k) * y_k * (1 - y_k)
  std::vector<double> delta_out(net.output_dim());
  for (std::size_t k = 0; k < net.output_dim(); ++k) {
    const double y = act.output[k];
    delta_out[k] = -(desired[k] - y) * y * (1.0 - y);
    g.g_b_out[k] = delta_out[k];
    for (std::size_t j = 0; j < net.hidden_units(); ++j)
      g.g_w_out[k][j] = delta_out[k] * act.hidden[j];
  }
  // delta_j = (sum_k delta_k * w_out[k][j]) * h_j * (1 - h_j)
  for (std::size_t j = 0; j < net.hidden_units(); ++j) {
    double back = 0.0;
    for (std::size_t k = 0; k < net.output_dim(); ++k)
      back += delta_out[k] * net.w_out[k][j];
    const double h = act.hidden[j];
    const double delta = back * h * (1.0 - h);
    g.g_b_hidden[j] = delta;
    for (std::size_t i = 0; i < input.size(); ++i)
      g.g_w_in[j][i] = delta * input[i];
  }
  return g;
}

namespace {

void apply_update(std::vector<double>& w, std::vector<double>& v,
                  const std::vector<double>& g, double lr, double momentum) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    v[i] = momentum * v[i] - lr * g[i];
    w[i] += v[i];
  }
}

}  // namespace

double train_epoch(Network& net, const PatternSet& train, const TrainConfig& cfg,
                   Gradients& velocity, Rng& rng) {
  cfg.validate();
  if (train.size() == 0) throw InputError("train_epoch: empty training set");

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  if (cfg.shuffle) {
    // Fisher-Yates driven by the carried generator.
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[rng.index(i + 1)]);
  }

  for (std::size_t n : order) {
    const Gradients g = backprop_gradients(net, train.inputs[n], train.targets[n]);
    for (std::size_t j = 0; j < net.hidden_units(); ++j)
      apply_update(net.w_in[j], velocity.g_w_in[j], g.g_w_in[j],
                   cfg.learning_rate, cfg.momentum);
    apply_update(net.b_hidden, velocity.g_b_hidden, g.g_b_hidden,
                 cfg.learning_rate, cfg.momentum);
    for (std::size_t k = 0; k < net.output_dim(); ++k)
      apply_update(net.w_out[k], velocity.g_w_out[k], g.g_w_out[k],
                   cfg.learning_rate, cfg.momentum);
    apply_update(net.b_out, velocity.g_b_out, g.g_b_out,
                 cfg.learning_rate, cfg.momentum);
  }

  // Reported error is a clean full pass after the epoch's updates.
  return mean_squared_error(net, train);
}

std::pair<Network, ErrorHistory> train_phase(const Network& net, const PatternSet& train,
                                             const PatternSet* valid,
                                             const TrainConfig& cfg) {
  cfg.validate();
  Network current = net;
  Gradients velocity = Gradients::zeros_like(net);
  Rng rng(cfg.seed);
  ErrorHistory history;
  history.reserve(cfg.epochs_per_phase);
  for (std::size_t epoch = 1; epoch <= cfg.epochs_per_phase; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_error = train_epoch(current, train, cfg, velocity, rng);
    if (valid != nullptr) rec.valid_error = mean_squared_error(current, *valid);
    history.push_back(rec);
  }
  return {std::move(current), std::move(history)};
}

}  // namespace mfnnca
