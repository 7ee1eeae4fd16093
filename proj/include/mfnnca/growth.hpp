#pragma once

#include <limits>
#include <vector>

#include "mfnnca/data.hpp"
#include "mfnnca/metrics.hpp"
#include "mfnnca/network.hpp"
#include "mfnnca/training.hpp"

namespace mfnnca {

struct StoppingCriteria {
  double max_validation_error = 0.02;  // acceptable xi_av on the validation set
  double min_efficiency = 96.0;        // acceptable efficiency percentage
  std::size_t max_hidden_units = 8;    // hard budget so the loop terminates
  // When true, the efficiency check uses the validation split instead of the
  // test split, avoiding test-set leakage in the stopping rule. Off by
  // default: the published procedure checks the test split.
  bool strict = false;

  void validate() const;
};

struct PhaseRecord {
  std::size_t hidden_units = 0;
  std::size_t epochs_this_phase = 0;
  std::size_t cumulative_epochs = 0;
  EvalResult train;
  EvalResult valid;
  EvalResult test;
  double overall_efficiency_percent = 0.0;
};

enum class Termination { CriteriaMet, BudgetExhausted };

struct GrowthTrace {
  std::vector<PhaseRecord> phases;
  Termination termination = Termination::BudgetExhausted;
  std::size_t best_phase_index = 0;
  std::vector<ErrorHistory> histories;    // per phase, same order
  std::vector<Network> checkpoints;       // post-training network per phase
};

// Index of the phase with maximal overall efficiency; ties go to the phase
// with fewer hidden units (the earlier one).
std::size_t select_best_phase(const std::vector<PhaseRecord>& phases);

// The growth loop: start at one hidden unit, train a phase, evaluate all
// three splits, stop when validation error and efficiency are both
// acceptable, otherwise add a unit (carrying all trained weights) and repeat
// until the hidden-unit budget runs out. Returns the network checkpointed at
// the best phase together with the full trace.
std::pair<Network, GrowthTrace> run_mfnnca(const SplitDataset& data,
                                           const DatasetSchema& schema,
                                           const NetworkConfig& net_cfg,
                                           const TrainConfig& train_cfg,
                                           const StoppingCriteria& stop);

}  // namespace mfnnca
