#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfnnca/data.hpp"
#include "mfnnca/network.hpp"
#include "mfnnca/rng.hpp"

namespace mfnnca {

struct TrainConfig {
  double learning_rate = 0.1;
  double momentum = 0.9;
  std::size_t epochs_per_phase = 500;
  bool shuffle = true;
  std::uint64_t seed = 0;  // shuffle order seed

  void validate() const;
};

// Partials of the per-sample error with respect to every weight and bias;
// also reused as the momentum velocity buffer.
struct Gradients {
  std::vector<std::vector<double>> g_w_in;
  std::vector<double> g_b_hidden;
  std::vector<std::vector<double>> g_w_out;
  std::vector<double> g_b_out;

  static Gradients zeros_like(const Network& net);
};

struct EpochRecord {
  std::size_t epoch = 0;  // strictly increasing, starts at 1
  double train_error = 0.0;
  std::optional<double> valid_error;
};

using ErrorHistory = std::vector<EpochRecord>;

// xi(n) = 1/2 sum_k (d_k - y_k)^2
double sample_error(const std::vector<double>& desired, const std::vector<double>& actual);

// xi_av = mean of sample_error over all patterns. Empty set is an error.
double mean_squared_error(const Network& net, const PatternSet& patterns);

Gradients backprop_gradients(const Network& net, const std::vector<double>& input,
                             const std::vector<double>& desired);

// One pass of per-pattern gradient descent with momentum: for each pattern,
// v <- momentum*v - lr*g; w <- w + v. Order is shuffled via rng when
// cfg.shuffle. Returns xi_av measured on the training set after the pass.
double train_epoch(Network& net, const PatternSet& train, const TrainConfig& cfg,
                   Gradients& velocity, Rng& rng);

// Runs cfg.epochs_per_phase epochs from zero velocity, recording training
// (and validation, when given) xi_av after every epoch.
std::pair<Network, ErrorHistory> train_phase(const Network& net, const PatternSet& train,
                                             const PatternSet* valid,
                                             const TrainConfig& cfg);

}  // namespace mfnnca
