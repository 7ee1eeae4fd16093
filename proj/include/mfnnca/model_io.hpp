#pragma once

#include <string>

#include "mfnnca/network.hpp"

namespace mfnnca {

// Plain-text model format, one line each:
//   MFNNCA-MODEL 1
//   <input_dim> <hidden_units> <output_dim>
//   w_in rows (hidden_units lines of input_dim values)
//   b_hidden (one line)
//   w_out rows (output_dim lines of hidden_units values)
//   b_out (one line)
// Values are written as shortest decimal strings that round-trip exactly, so
// load(save(net)) reproduces forward outputs bit for bit.
void save_model(const Network& net, const std::string& path);
Network load_model(const std::string& path);

// Shortest round-tripping decimal representation of a double.
std::string format_double(double v);

}  // namespace mfnnca
