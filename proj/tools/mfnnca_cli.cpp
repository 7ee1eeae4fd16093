#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfnnca/errors.hpp"
#include "mfnnca/experiment.hpp"
#include "mfnnca/metrics.hpp"
#include "mfnnca/model_io.hpp"

namespace fs = std::filesystem;
using namespace mfnnca;

namespace {

ExperimentConfig resolve_config(const std::string& config_path,
                                const std::vector<std::string>& overrides) {
  ExperimentConfig cfg = parse_experiment_config(config_path);
  for (const auto& o : overrides) apply_override(cfg, o);
  return cfg;
}

int cmd_grow(const std::string& config_path, const std::vector<std::string>& overrides) {
  const ExperimentConfig cfg = resolve_config(config_path, overrides);
  const GrowOutcome outcome = run_grow(cfg);
  const auto& best = outcome.trace.phases[outcome.trace.best_phase_index];
  std::cout << "termination: "
            << (outcome.trace.termination == Termination::CriteriaMet
                    ? "criteria_met"
                    : "budget_exhausted")
            << "\nbest phase: h=" << best.hidden_units << ", overall efficiency "
            << format_double(best.overall_efficiency_percent) << "%\n"
            << "artifacts in " << cfg.out_dir << '\n';
  return outcome.trace.termination == Termination::CriteriaMet ? 0 : 2;
}

int cmd_train(const std::string& config_path, const std::vector<std::string>& overrides) {
  const ExperimentConfig cfg = resolve_config(config_path, overrides);
  const TrainOutcome outcome = run_train_baseline(cfg);
  for (const auto& r : outcome.evals)
    std::cout << r.split_name << ": " << r.classified << '/' << r.total << " ("
              << format_double(r.efficiency_percent) << "%), mse "
              << format_double(r.ms_error) << '\n';
  std::cout << "artifacts in " << cfg.out_dir << '\n';
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& config_path,
             const std::vector<std::string>& overrides, const std::string& split_name,
             const std::string& out_path) {
  const ExperimentConfig cfg = resolve_config(config_path, overrides);
  const Network net = load_model(model_path);
  auto [schema, data] = load_experiment_data(cfg);
  if (net.input_dim() != schema.input_attributes ||
      net.output_dim() != schema.output_units)
    throw ConfigError("model shape " + std::to_string(net.input_dim()) + "-" +
                      std::to_string(net.hidden_units()) + "-" +
                      std::to_string(net.output_dim()) +
                      " does not match dataset schema '" + schema.name + "' (" +
                      std::to_string(schema.input_attributes) + " attributes, " +
                      std::to_string(schema.output_units) + " output units)");
  const PatternSet* split = nullptr;
  if (split_name == "train") split = &data.train;
  else if (split_name == "valid") split = &data.valid;
  else if (split_name == "test") split = &data.test;
  else throw ConfigError("--split must be train, valid or test");

  const EvalResult r = evaluate(net, *split, schema.target_encoding, split_name);
  std::ostringstream line;
  line << r.split_name << ": " << r.classified << '/' << r.total << " ("
       << format_double(r.efficiency_percent) << "%), mse " << format_double(r.ms_error)
       << '\n';
  std::cout << line.str();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file: " + out_path);
    out << line.str();
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& overrides,
              const std::string& seeds_arg, unsigned jobs) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(seeds_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) seeds.push_back(std::stoull(tok));
  if (seeds.empty()) throw ConfigError("--seeds: need at least one seed");

  const ExperimentConfig base = resolve_config(config_path, overrides);
  const std::string sweep_dir = base.out_dir;
  fs::create_directories(sweep_dir);

  struct RunRow {
    std::uint64_t seed;
    Termination termination;
    std::size_t best_h;
    double overall;
  };
  std::vector<std::future<RunRow>> futures;
  unsigned inflight = std::max(1u, jobs);
  std::vector<RunRow> rows;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      ExperimentConfig cfg = base;
      cfg.net.seed = seeds[i];
      cfg.train.seed = seeds[i];
      cfg.out_dir = (fs::path(sweep_dir) / ("seed_" + std::to_string(seeds[i]))).string();
      const GrowOutcome outcome = run_grow(cfg);
      const auto& best = outcome.trace.phases[outcome.trace.best_phase_index];
      return RunRow{seeds[i], outcome.trace.termination, best.hidden_units,
                    best.overall_efficiency_percent};
    }));
    if (futures.size() >= inflight || i + 1 == seeds.size()) {
      for (auto& f : futures) rows.push_back(f.get());
      futures.clear();
    }
  }

  const std::string summary_path = (fs::path(sweep_dir) / "sweep_summary.csv").string();
  std::ofstream out(summary_path);
  if (!out) throw ConfigError("cannot open output file: " + summary_path);
  out << "seed,termination,best_hidden_units,overall_efficiency\n";
  for (const auto& r : rows) {
    out << r.seed << ','
        << (r.termination == Termination::CriteriaMet ? "criteria_met" : "budget_exhausted")
        << ',' << r.best_h << ',' << format_double(r.overall) << '\n';
    std::cout << "seed " << r.seed << ": best h=" << r.best_h << ", overall "
              << format_double(r.overall) << "%\n";
  }
  std::cout << "sweep summary in " << summary_path << '\n';
  return 0;
}

int cmd_report(const std::string& trace_path, const std::string& name,
               const std::string& out_path) {
  summarize_trace_csv(trace_path, name, out_path);
  std::cout << "summary written to " << out_path << '\n';
  return 0;
}

int cmd_datagen(const std::string& dataset, const std::string& schema_path,
                const std::string& out_path, std::size_t n, std::uint64_t seed,
                double noise) {
  DatasetSchema schema = schema_path.empty() ? builtin_schema(dataset)
                                             : load_schema(schema_path);
  if (n == 0) n = schema.total_examples != 0 ? schema.total_examples : 400;
  generate_synthetic_dataset(schema, n, seed, noise, out_path);
  std::cout << "wrote " << n << " synthetic records (" << schema.name << " layout) to "
            << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive single-hidden-layer network trainer (grow-by-one with a "
               "validation-error/efficiency stopping rule)"};
  app.require_subcommand(1);

  std::string config_path, model_path, split_name = "test", out_path;
  std::string trace_path, report_name = "dataset";
  std::string dataset, schema_path, seeds_arg = "1";
  std::vector<std::string> overrides;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  double gen_noise = 0.02;
  unsigned jobs = 1;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "experiment config file (key=value)")
        ->required();
    sub->add_option("-s,--set", overrides,
                    "override a config key, e.g. --set train.seed=7 (repeatable)");
  };

  auto* grow = app.add_subcommand("grow", "run the constructive growth loop");
  add_config(grow);

  auto* train = app.add_subcommand(
      "train", "fixed-topology backpropagation baseline (no growth)");
  add_config(train);

  auto* eval = app.add_subcommand("eval", "evaluate a saved model on one split");
  add_config(eval);
  eval->add_option("-m,--model", model_path, "model file")->required();
  eval->add_option("--split", split_name, "train|valid|test (default test)");
  eval->add_option("-o,--out", out_path, "also write the result to this file");

  auto* sweep = app.add_subcommand("sweep", "run grow over a list of seeds");
  add_config(sweep);
  sweep->add_option("--seeds", seeds_arg, "comma-separated seed list")->required();
  sweep->add_option("-j,--jobs", jobs, "max parallel runs (default 1)");

  auto* report = app.add_subcommand("report", "rebuild summary.txt from a trace.csv");
  report->add_option("--trace", trace_path, "trace.csv path")->required();
  report->add_option("--name", report_name, "dataset name for the heading");
  report->add_option("-o,--out", out_path, "summary output path")->required();

  auto* datagen = app.add_subcommand(
      "datagen", "write a deterministic synthetic dataset in a schema's raw layout");
  datagen->add_option("--dataset", dataset, "builtin schema name");
  datagen->add_option("--schema", schema_path, "schema file (overrides --dataset)");
  datagen->add_option("-o,--out", out_path, "output CSV path")->required();
  datagen->add_option("-n", gen_n, "record count (default: schema total)");
  datagen->add_option("--seed", gen_seed, "generator seed (default 1)");
  datagen->add_option("--noise", gen_noise, "label-flip probability (default 0.02)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (grow->parsed()) return cmd_grow(config_path, overrides);
    if (train->parsed()) return cmd_train(config_path, overrides);
    if (eval->parsed())
      return cmd_eval(model_path, config_path, overrides, split_name, out_path);
    if (sweep->parsed()) return cmd_sweep(config_path, overrides, seeds_arg, jobs);
    if (report->parsed()) return cmd_report(trace_path, report_name, out_path);
    if (datagen->parsed()) {
      if (dataset.empty() && schema_path.empty())
        throw ConfigError("datagen: need --dataset or --schema");
      return cmd_datagen(dataset, schema_path, out_path, gen_n, gen_seed, gen_noise);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
