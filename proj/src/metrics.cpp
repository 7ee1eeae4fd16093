#include "mfnnca/metrics.hpp"

#include "mfnnca/errors.hpp"
#include "mfnnca/training.hpp"

namespace mfnnca {

std::size_t classify(const std::vector<double>& output, TargetEncoding encoding) {
  if (encoding == TargetEncoding::SingleUnit)
    return output[0] >= 0.5 ? 1 : 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k < output.size(); ++k)
    if (output[k] > output[best]) best = k;
  return best;
}

std::size_t target_class(const std::vector<double>& target, TargetEncoding encoding) {
  return classify(target, encoding);
}

EvalResult evaluate(const Network& net, const PatternSet& split,
                    TargetEncoding encoding, const std::string& split_name) {
  if (split.size() == 0) throw InputError("evaluate: empty split");
  EvalResult r;
  r.split_name = split_name;
  r.total = split.size();
  for (std::size_t n = 0; n < split.size(); ++n) {
    const auto act = forward(net, split.inputs[n]);
    if (classify(act.output, encoding) == target_class(split.targets[n], encoding))
      ++r.classified;
  }
  r.efficiency_percent = 100.0 * static_cast<double>(r.classified) /
                         static_cast<double>(r.total);
  r.ms_error = mean_squared_error(net, split);
  return r;
}

double overall_efficiency(const std::vector<EvalResult>& results) {
  std::size_t classified = 0, total = 0;
  for (const auto& r : results) {
    classified += r.classified;
    total += r.total;
  }
  if (total == 0) throw InputError("overall_efficiency: zero total");
  return 100.0 * static_cast<double>(classified) / static_cast<double>(total);
}

}  // namespace mfnnca
