#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfnnca/data.hpp"
#include "mfnnca/growth.hpp"
#include "mfnnca/network.hpp"
#include "mfnnca/training.hpp"

namespace mfnnca {

// Resolved experiment configuration. Parsed from a flat key=value file with
// section prefixes (data., net., train., stop., out.); any key can be
// overridden one-for-one from the command line.
struct ExperimentConfig {
  std::string dataset_name;   // data.name; builtin schema unless data.schema given
  std::string data_path;      // data.path: raw CSV
  std::string schema_path;    // data.schema: optional schema file
  SplitOrder order = SplitOrder::file_order();  // data.order / data.order_seed

  NetworkConfig net;          // input/output dims filled in from the schema
  TrainConfig train;
  StoppingCriteria stop;

  std::string out_dir = "run_out";

  void validate() const;
};

ExperimentConfig parse_experiment_config(const std::string& path);
// Applies a single "section.key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Loads, encodes, and splits the configured dataset. Warnings (constant
// attributes etc.) are appended when the pointer is given.
std::pair<DatasetSchema, SplitDataset> load_experiment_data(
    const ExperimentConfig& cfg, std::vector<std::string>* warnings = nullptr);

struct RunArtifacts {
  std::string model_path;                  // best-phase model
  std::vector<std::string> checkpoint_paths;
  std::string trace_path;                  // trace.csv
  std::vector<std::string> error_curve_paths;  // errors_h<k>.csv
  std::string summary_path;                // summary.txt
  std::string log_path;                    // run.log
};

// Full grow pipeline: data -> growth -> artifacts under cfg.out_dir.
struct GrowOutcome {
  GrowthTrace trace;
  Network best;
  RunArtifacts artifacts;
};
GrowOutcome run_grow(const ExperimentConfig& cfg);

// Fixed-topology baseline: trains net.hidden_units units for one phase with
// no growth, then evaluates the three splits. Writes model.txt, errors.csv
// and summary.txt under cfg.out_dir.
struct TrainOutcome {
  Network net;
  ErrorHistory history;
  std::vector<EvalResult> evals;  // train, valid, test
  RunArtifacts artifacts;
};
TrainOutcome run_train_baseline(const ExperimentConfig& cfg);

// Report emission (also usable standalone via the `report` subcommand).
void write_trace_csv(const GrowthTrace& trace, const std::string& path);
void write_error_curves(const GrowthTrace& trace, const std::string& out_dir,
                        std::vector<std::string>* paths = nullptr);
void write_summary(const GrowthTrace& trace, const std::string& dataset_name,
                   const std::string& path);
// Rebuilds summary.txt from a previously written trace.csv.
void summarize_trace_csv(const std::string& trace_csv, const std::string& dataset_name,
                         const std::string& summary_path);

// Deterministic synthetic dataset generator (two separable attribute
// clusters plus label noise) in the raw CSV layout the schema expects.
// Useful for demos and for exercising the pipeline without the benchmark
// files. noise is the label-flip probability.
void generate_synthetic_dataset(const DatasetSchema& schema, std::size_t n,
                                std::uint64_t seed, double noise,
                                const std::string& path);

}  // namespace mfnnca
