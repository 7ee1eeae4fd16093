#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfnnca/rng.hpp"

namespace mfnnca {

struct NetworkConfig {
  std::size_t input_dim = 0;
  std::size_t hidden_units = 1;
  std::size_t output_dim = 1;
  double init_range = 0.5;   // weights drawn uniformly from [-r, +r]
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError on violation
};

// Single-hidden-layer feedforward classifier. Plain value type: copyable,
// no hidden state, no operation mutates its argument.
struct Network {
  // w_in[j][i]: input i -> hidden j.   w_out[k][j]: hidden j -> output k.
  std::vector<std::vector<double>> w_in;
  std::vector<double> b_hidden;
  std::vector<std::vector<double>> w_out;
  std::vector<double> b_out;

  std::size_t input_dim() const { return w_in.empty() ? 0 : w_in[0].size(); }
  std::size_t hidden_units() const { return w_in.size(); }
  std::size_t output_dim() const { return w_out.size(); }

  void validate() const;  // shape consistency + finiteness
};

struct Activations {
  std::vector<double> hidden;
  std::vector<double> output;
};

// How the weights of a freshly added hidden unit are initialized.
struct NewUnitInit {
  enum class Mode { RandomInRange, Zero };
  Mode mode = Mode::RandomInRange;
  double range = 0.5;

  static NewUnitInit random_in_range(double r) { return {Mode::RandomInRange, r}; }
  static NewUnitInit zero() { return {Mode::Zero, 0.0}; }
};

double sigmoid(double x);

// Weights drawn in a fixed documented order (w_in row-major, b_hidden,
// w_out row-major, b_out) so the same (config, seed) always yields a
// bit-identical network.
Network init_network(const NetworkConfig& config);

Activations forward(const Network& net, const std::vector<double>& input);

// Returns a network with one more hidden unit. All pre-existing weights are
// copied bit-identically; the new unit's input weights, bias, and outgoing
// weights are drawn from rng per mode (order: input weights, bias, outgoing).
Network add_hidden_unit(const Network& net, const NewUnitInit& mode, Rng& rng);

}  // namespace mfnnca
