#pragma once

#include <string>
#include <vector>

#include "mfnnca/data.hpp"
#include "mfnnca/network.hpp"

namespace mfnnca {

struct EvalResult {
  std::string split_name;
  std::size_t classified = 0;  // correctly classified patterns
  std::size_t total = 0;
  double efficiency_percent = 0.0;  // 100 * classified / total
  double ms_error = 0.0;            // xi_av on the split
};

// Decision rule: single_unit -> class 1 iff output >= 0.5; one_per_class ->
// argmax, ties to the lowest index.
std::size_t classify(const std::vector<double>& output, TargetEncoding encoding);

// Class index encoded by a target row (same rule applied to targets).
std::size_t target_class(const std::vector<double>& target, TargetEncoding encoding);

EvalResult evaluate(const Network& net, const PatternSet& split,
                    TargetEncoding encoding, const std::string& split_name = "");

// Pooled accuracy: 100 * (sum classified) / (sum totals).
double overall_efficiency(const std::vector<EvalResult>& results);

}  // namespace mfnnca
