#include "mfnnca/network.hpp"

#include <cmath>
#include <string>

#include "mfnnca/errors.hpp"

namespace mfnnca {

void NetworkConfig::validate() const {
  if (input_dim < 1 || hidden_units < 1 || output_dim < 1)
    throw ConfigError("network dimensions must all be >= 1 (got " +
                      std::to_string(input_dim) + "-" + std::to_string(hidden_units) +
                      "-" + std::to_string(output_dim) + ")");
  if (!(init_range > 0.0))
    throw ConfigError("init_range must be > 0");
}

void Network::validate() const {
  const std::size_t h = w_in.size();
  if (h == 0 || w_in[0].empty() || w_out.empty())
    throw ConfigError("network has empty layer");
  const std::size_t in = w_in[0].size();
  for (const auto& row : w_in)
    if (row.size() != in) throw ConfigError("ragged w_in");
  if (b_hidden.size() != h) throw ConfigError("b_hidden size mismatch");
  for (const auto& row : w_out)
    if (row.size() != h) throw ConfigError("w_out column count != hidden_units");
  if (b_out.size() != w_out.size()) throw ConfigError("b_out size mismatch");
  auto finite = [](const std::vector<double>& v) {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  };
  for (const auto& row : w_in)
    if (!finite(row)) throw ConfigError("non-finite value in w_in");
  for (const auto& row : w_out)
    if (!finite(row)) throw ConfigError("non-finite value in w_out");
  if (!finite(b_hidden) || !finite(b_out))
    throw ConfigError("non-finite value in biases");
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Network init_network(const NetworkConfig& config) {
  config.validate();
  Rng rng(config.seed);
  auto draw = [&] { return rng.uniform_symmetric(config.init_range); };

  Network net;
  net.w_in.resize(config.hidden_units, std::vector<double>(config.input_dim));
  for (auto& row : net.w_in)
    for (double& w : row) w = draw();
  net.b_hidden.resize(config.hidden_units);
  for (double& b : net.b_hidden) b = draw();
  net.w_out.resize(config.output_dim, std::vector<double>(config.hidden_units));
  for (auto& row : net.w_out)
    for (double& w : row) w = draw();
  net.b_out.resize(config.output_dim);
  for (double& b : net.b_out) b = draw();
  return net;
}

Activations forward(const Network& net, const std::vector<double>& input) {
  if (input.size() != net.input_dim())
    throw InputError("forward: input length " + std::to_string(input.size()) +
                     " != input_dim " + std::to_string(net.input_dim()));
  Activations act;
  act.hidden.resize(net.hidden_units());
  for (std::size_t j = 0; j < net.hidden_units(); ++j) {
    double s = net.b_hidden[j];
    const auto& row = net.w_in[j];
    for (std::size_t i = 0; i < input.size(); ++i) s += row[i] * input[i];
    act.hidden[j] = sigmoid(s);
  }
  act.output.resize(net.output_dim());
  for (std::size_t k = 0; k < net.output_dim(); ++k) {
    double s = net.b_out[k];
    const auto& row = net.w_out[k];
    for (std::size_t j = 0; j < act.hidden.size(); ++j) s += row[j] * act.hidden[j];
    act.output[k] = sigmoid(s);
  }
  return act;
}

Network add_hidden_unit(const Network& net, const NewUnitInit& mode, Rng& rng) {
  net.validate();
  auto draw = [&]() -> double {
    return mode.mode == NewUnitInit::Mode::Zero ? 0.0
                                                : rng.uniform_symmetric(mode.range);
  };
  Network grown = net;
  // Draw order: new unit's input weights, then its bias, then its outgoing
  // weights in output order.
  std::vector<double> new_row(net.input_dim());
  for (double& w : new_row) w = draw();
  grown.w_in.push_back(std::move(new_row));
  grown.b_hidden.push_back(draw());
  for (auto& row : grown.w_out) row.push_back(draw());
  return grown;
}

}  // namespace mfnnca
