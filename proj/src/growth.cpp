#include "mfnnca/growth.hpp"

#include <string>

#include "mfnnca/errors.hpp"

namespace mfnnca {

void StoppingCriteria::validate() const {
  if (!(max_validation_error >= 0.0))
    throw ConfigError("max_validation_error must be >= 0");
  if (min_efficiency < 0.0 || min_efficiency > 100.0)
    throw ConfigError("min_efficiency must lie in [0, 100]");
  if (max_hidden_units < 1) throw ConfigError("max_hidden_units must be >= 1");
}

std::size_t select_best_phase(const std::vector<PhaseRecord>& phases) {
  if (phases.empty()) throw InputError("select_best_phase: no phases");
  std::size_t best = 0;
  for (std::size_t i = 1; i < phases.size(); ++i)
    if (phases[i].overall_efficiency_percent > phases[best].overall_efficiency_percent)
      best = i;  // strict > keeps ties at the smaller network
  return best;
}

std::pair<Network, GrowthTrace> run_mfnnca(const SplitDataset& data,
                                           const DatasetSchema& schema,
                                           const NetworkConfig& net_cfg,
                                           const TrainConfig& train_cfg,
                                           const StoppingCriteria& stop) {
  net_cfg.validate();
  train_cfg.validate();
  stop.validate();
  if (data.train.input_dim() != net_cfg.input_dim ||
      data.train.output_dim() != net_cfg.output_dim)
    throw ConfigError("run_mfnnca: dataset dimensions (" +
                      std::to_string(data.train.input_dim()) + " in, " +
                      std::to_string(data.train.output_dim()) +
                      " out) do not match the network config");

  // Growth always starts at one hidden unit regardless of net_cfg.hidden_units.
  NetworkConfig initial = net_cfg;
  initial.hidden_units = 1;
  Network net = init_network(initial);
  // New-unit weights come from their own stream so that growing does not
  // perturb the shuffle sequence.
  Rng grow_rng(net_cfg.seed + 1);

  GrowthTrace trace;
  std::size_t cumulative_epochs = 0;
  for (std::size_t h = 1; h <= stop.max_hidden_units; ++h) {
    TrainConfig phase_cfg = train_cfg;
    phase_cfg.seed = train_cfg.seed + (h - 1);  // distinct shuffle stream per phase
    auto [trained, history] = train_phase(net, data.train, &data.valid, phase_cfg);
    net = std::move(trained);
    cumulative_epochs += phase_cfg.epochs_per_phase;

    PhaseRecord rec;
    rec.hidden_units = h;
    rec.epochs_this_phase = phase_cfg.epochs_per_phase;
    rec.cumulative_epochs = cumulative_epochs;
    rec.train = evaluate(net, data.train, schema.target_encoding, "train");
    rec.valid = evaluate(net, data.valid, schema.target_encoding, "valid");
    rec.test = evaluate(net, data.test, schema.target_encoding, "test");
    rec.overall_efficiency_percent =
        overall_efficiency({rec.train, rec.valid, rec.test});
    trace.phases.push_back(rec);
    trace.histories.push_back(std::move(history));
    trace.checkpoints.push_back(net);

    const double eff = stop.strict ? rec.valid.efficiency_percent
                                   : rec.test.efficiency_percent;
    if (rec.valid.ms_error <= stop.max_validation_error && eff >= stop.min_efficiency) {
      trace.termination = Termination::CriteriaMet;
      trace.best_phase_index = select_best_phase(trace.phases);
      return {trace.checkpoints[trace.best_phase_index], trace};
    }
    if (h < stop.max_hidden_units)
      net = add_hidden_unit(net, NewUnitInit::random_in_range(net_cfg.init_range),
                            grow_rng);
  }
  trace.termination = Termination::BudgetExhausted;
  trace.best_phase_index = select_best_phase(trace.phases);
  return {trace.checkpoints[trace.best_phase_index], trace};
}

}  // namespace mfnnca
