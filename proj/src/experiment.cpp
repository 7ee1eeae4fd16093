#include "mfnnca/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfnnca/errors.hpp"
#include "mfnnca/metrics.hpp"
#include "mfnnca/model_io.hpp"
#include "mfnnca/rng.hpp"

namespace fs = std::filesystem;

namespace mfnnca {

void ExperimentConfig::validate() const {
  if (dataset_name.empty()) throw ConfigError("data.name is required");
  if (data_path.empty()) throw ConfigError("data.path is required");
  if (!(net.init_range > 0.0)) throw ConfigError("net.init_range must be > 0");
  train.validate();
  stop.validate();
  if (out_dir.empty()) throw ConfigError("out.dir is required");
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& val) {
  try {
    if (key == "data.name") cfg.dataset_name = val;
    else if (key == "data.path") cfg.data_path = val;
    else if (key == "data.schema") cfg.schema_path = val;
    else if (key == "data.order") {
      if (val == "file_order") cfg.order.kind = SplitOrder::Kind::FileOrder;
      else if (val == "shuffle") cfg.order.kind = SplitOrder::Kind::SeededShuffle;
      else throw ConfigError("data.order must be file_order or shuffle");
    } else if (key == "data.order_seed") cfg.order.seed = std::stoull(val);
    else if (key == "net.init_range") cfg.net.init_range = std::stod(val);
    else if (key == "net.seed") cfg.net.seed = std::stoull(val);
    else if (key == "net.hidden_units") cfg.net.hidden_units = std::stoul(val);
    else if (key == "train.learning_rate") cfg.train.learning_rate = std::stod(val);
    else if (key == "train.momentum") cfg.train.momentum = std::stod(val);
    else if (key == "train.epochs_per_phase") cfg.train.epochs_per_phase = std::stoul(val);
    else if (key == "train.shuffle") cfg.train.shuffle = parse_bool(val, key);
    else if (key == "train.seed") cfg.train.seed = std::stoull(val);
    else if (key == "stop.max_validation_error") cfg.stop.max_validation_error = std::stod(val);
    else if (key == "stop.min_efficiency") cfg.stop.min_efficiency = std::stod(val);
    else if (key == "stop.max_hidden_units") cfg.stop.max_hidden_units = std::stoul(val);
    else if (key == "stop.strict") cfg.stop.strict = parse_bool(val, key);
    else if (key == "out.dir") cfg.out_dir = val;
    else throw ConfigError("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError(key + ": bad value '" + val + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError(key + ": value out of range '" + val + "'");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ": line " + std::to_string(line_no) + ": expected key=value");
    set_key(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  set_key(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::pair<DatasetSchema, SplitDataset> load_experiment_data(
    const ExperimentConfig& cfg, std::vector<std::string>* warnings) {
  DatasetSchema schema = cfg.schema_path.empty() ? builtin_schema(cfg.dataset_name)
                                                 : load_schema(cfg.schema_path);
  const auto records = load_raw(cfg.data_path, schema);
  const PatternSet patterns = encode(records, schema, warnings);
  const SplitSpec spec = split_spec_for(records.size());
  return {schema, split(patterns, spec, cfg.order)};
}

namespace {

const char* kTraceHeader =
    "hidden_units,epochs_this_phase,cumulative_epochs,"
    "train_classified,train_total,train_efficiency,train_ms_error,"
    "valid_classified,valid_total,valid_efficiency,valid_ms_error,"
    "test_classified,test_total,test_efficiency,test_ms_error,"
    "overall_efficiency,best";

void write_eval_cols(std::ostream& out, const EvalResult& r) {
  out << r.classified << ',' << r.total << ',' << format_double(r.efficiency_percent)
      << ',' << format_double(r.ms_error) << ',';
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "data.name=" << cfg.dataset_name << '\n'
      << "data.path=" << cfg.data_path << '\n'
      << "data.schema=" << cfg.schema_path << '\n'
      << "data.order="
      << (cfg.order.kind == SplitOrder::Kind::FileOrder ? "file_order" : "shuffle") << '\n'
      << "data.order_seed=" << cfg.order.seed << '\n'
      << "net.init_range=" << format_double(cfg.net.init_range) << '\n'
      << "net.seed=" << cfg.net.seed << '\n'
      << "net.hidden_units=" << cfg.net.hidden_units << '\n'
      << "train.learning_rate=" << format_double(cfg.train.learning_rate) << '\n'
      << "train.momentum=" << format_double(cfg.train.momentum) << '\n'
      << "train.epochs_per_phase=" << cfg.train.epochs_per_phase << '\n'
      << "train.shuffle=" << (cfg.train.shuffle ? "true" : "false") << '\n'
      << "train.seed=" << cfg.train.seed << '\n'
      << "stop.max_validation_error=" << format_double(cfg.stop.max_validation_error) << '\n'
      << "stop.min_efficiency=" << format_double(cfg.stop.min_efficiency) << '\n'
      << "stop.max_hidden_units=" << cfg.stop.max_hidden_units << '\n'
      << "stop.strict=" << (cfg.stop.strict ? "true" : "false") << '\n'
      << "out.dir=" << cfg.out_dir << '\n';
  return out.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file for writing: " + path);
  return out;
}

}  // namespace

void write_trace_csv(const GrowthTrace& trace, const std::string& path) {
  auto out = open_out(path);
  out << kTraceHeader << '\n';
  for (std::size_t i = 0; i < trace.phases.size(); ++i) {
    const auto& p = trace.phases[i];
    out << p.hidden_units << ',' << p.epochs_this_phase << ',' << p.cumulative_epochs << ',';
    write_eval_cols(out, p.train);
    write_eval_cols(out, p.valid);
    write_eval_cols(out, p.test);
    out << format_double(p.overall_efficiency_percent) << ','
        << (i == trace.best_phase_index ? 1 : 0) << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

void write_error_curves(const GrowthTrace& trace, const std::string& out_dir,
                        std::vector<std::string>* paths) {
  for (std::size_t i = 0; i < trace.histories.size(); ++i) {
    const std::string path =
        (fs::path(out_dir) / ("errors_h" + std::to_string(i + 1) + ".csv")).string();
    auto out = open_out(path);
    out << "epoch,train_error,valid_error\n";
    for (const auto& rec : trace.histories[i]) {
      out << rec.epoch << ',' << format_double(rec.train_error) << ',';
      if (rec.valid_error) out << format_double(*rec.valid_error);
      out << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path);
    if (paths != nullptr) paths->push_back(path);
  }
}

namespace {

void write_summary_rows(std::ostream& out, const std::string& dataset_name,
                        const std::vector<PhaseRecord>& phases,
                        std::size_t best_index) {
  out << "Results for data set: " << dataset_name << "\n";
  out << "(best phase marked *; efficiency percentages are exact ratios, 2 dp)\n\n";
  out << "  HU  EPOCH  CUM-EPOCH  | TRAIN cls  eff%     mse      | VALID cls  eff%     mse      | TEST  cls  eff%     mse      | OVERALL%\n";
  auto fix = [](double v, int prec) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(prec);
    s << v;
    return s.str();
  };
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto& p = phases[i];
    auto split_cols = [&](const EvalResult& r) {
      std::ostringstream s;
      s << ' ' << r.classified << '/' << r.total << "  " << fix(r.efficiency_percent, 2)
        << "  " << fix(r.ms_error, 4);
      return s.str();
    };
    out << (i == best_index ? " *" : "  ") << p.hidden_units << "  "
        << p.epochs_this_phase << "  " << p.cumulative_epochs << "  |"
        << split_cols(p.train) << "  |" << split_cols(p.valid) << "  |"
        << split_cols(p.test) << "  |  " << fix(p.overall_efficiency_percent, 5) << '\n';
  }
}

}  // namespace

void write_summary(const GrowthTrace& trace, const std::string& dataset_name,
                   const std::string& path) {
  auto out = open_out(path);
  write_summary_rows(out, dataset_name, trace.phases, trace.best_phase_index);
  out << "\ntermination: "
      << (trace.termination == Termination::CriteriaMet ? "criteria_met"
                                                        : "budget_exhausted")
      << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

void summarize_trace_csv(const std::string& trace_csv, const std::string& dataset_name,
                         const std::string& summary_path) {
  std::ifstream in(trace_csv);
  if (!in) throw ConfigError("cannot open trace file: " + trace_csv);
  std::string header;
  if (!std::getline(in, header) || header != kTraceHeader)
    throw ParseError(trace_csv + ": unrecognized trace header");
  std::vector<PhaseRecord> phases;
  std::size_t best_index = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() != 17) throw ParseError(trace_csv + ": bad row: " + line);
    PhaseRecord p;
    auto u = [&](int i) { return std::stoull(cols[i]); };
    auto d = [&](int i) { return std::stod(cols[i]); };
    p.hidden_units = u(0);
    p.epochs_this_phase = u(1);
    p.cumulative_epochs = u(2);
    auto ev = [&](int base, const char* name) {
      EvalResult r;
      r.split_name = name;
      r.classified = u(base);
      r.total = u(base + 1);
      r.efficiency_percent = d(base + 2);
      r.ms_error = d(base + 3);
      return r;
    };
    p.train = ev(3, "train");
    p.valid = ev(7, "valid");
    p.test = ev(11, "test");
    p.overall_efficiency_percent = d(15);
    if (cols[16] == "1") best_index = phases.size();
    phases.push_back(p);
  }
  if (phases.empty()) throw ParseError(trace_csv + ": no phase rows");
  auto out = open_out(summary_path);
  write_summary_rows(out, dataset_name, phases, best_index);
}

GrowOutcome run_grow(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::string> warnings;
  auto [schema, data] = load_experiment_data(cfg, &warnings);

  NetworkConfig net_cfg = cfg.net;
  net_cfg.input_dim = schema.input_attributes;
  net_cfg.output_dim = schema.output_units;
  net_cfg.hidden_units = 1;

  auto [best, trace] = run_mfnnca(data, schema, net_cfg, cfg.train, cfg.stop);

  fs::create_directories(cfg.out_dir);
  GrowOutcome outcome;
  outcome.trace = std::move(trace);
  outcome.best = std::move(best);
  RunArtifacts& a = outcome.artifacts;
  a.model_path = (fs::path(cfg.out_dir) / "model.txt").string();
  save_model(outcome.best, a.model_path);
  for (std::size_t i = 0; i < outcome.trace.checkpoints.size(); ++i) {
    const std::string p =
        (fs::path(cfg.out_dir) / ("model_h" + std::to_string(i + 1) + ".txt")).string();
    save_model(outcome.trace.checkpoints[i], p);
    a.checkpoint_paths.push_back(p);
  }
  a.trace_path = (fs::path(cfg.out_dir) / "trace.csv").string();
  write_trace_csv(outcome.trace, a.trace_path);
  write_error_curves(outcome.trace, cfg.out_dir, &a.error_curve_paths);
  a.summary_path = (fs::path(cfg.out_dir) / "summary.txt").string();
  write_summary(outcome.trace, cfg.dataset_name, a.summary_path);

  a.log_path = (fs::path(cfg.out_dir) / "run.log").string();
  auto log = open_out(a.log_path);
  log << "resolved configuration:\n" << config_echo(cfg);
  log << "schema: " << schema.name << " (" << schema.input_attributes << " attributes, "
      << schema.output_units << " output units)\n";
  log << "splits: " << data.train.size() << '/' << data.valid.size() << '/'
      << data.test.size() << '\n';
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  log << "termination: "
      << (outcome.trace.termination == Termination::CriteriaMet ? "criteria_met"
                                                                : "budget_exhausted")
      << '\n';
  log << "best_phase: h=" << outcome.trace.phases[outcome.trace.best_phase_index].hidden_units
      << '\n';
  return outcome;
}

TrainOutcome run_train_baseline(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.net.hidden_units < 1) throw ConfigError("net.hidden_units must be >= 1");
  std::vector<std::string> warnings;
  auto [schema, data] = load_experiment_data(cfg, &warnings);

  NetworkConfig net_cfg = cfg.net;
  net_cfg.input_dim = schema.input_attributes;
  net_cfg.output_dim = schema.output_units;

  const Network initial = init_network(net_cfg);
  auto [net, history] = train_phase(initial, data.train, &data.valid, cfg.train);

  TrainOutcome outcome;
  outcome.net = std::move(net);
  outcome.history = std::move(history);
  outcome.evals = {evaluate(outcome.net, data.train, schema.target_encoding, "train"),
                   evaluate(outcome.net, data.valid, schema.target_encoding, "valid"),
                   evaluate(outcome.net, data.test, schema.target_encoding, "test")};

  fs::create_directories(cfg.out_dir);
  RunArtifacts& a = outcome.artifacts;
  a.model_path = (fs::path(cfg.out_dir) / "model.txt").string();
  save_model(outcome.net, a.model_path);
  const std::string errors_path = (fs::path(cfg.out_dir) / "errors.csv").string();
  {
    auto out = open_out(errors_path);
    out << "epoch,train_error,valid_error\n";
    for (const auto& rec : outcome.history) {
      out << rec.epoch << ',' << format_double(rec.train_error) << ',';
      if (rec.valid_error) out << format_double(*rec.valid_error);
      out << '\n';
    }
  }
  a.error_curve_paths.push_back(errors_path);
  a.summary_path = (fs::path(cfg.out_dir) / "summary.txt").string();
  {
    auto out = open_out(a.summary_path);
    out << "Fixed-topology baseline on " << cfg.dataset_name << " ("
        << net_cfg.input_dim << '-' << net_cfg.hidden_units << '-' << net_cfg.output_dim
        << ")\n";
    for (const auto& r : outcome.evals)
      out << r.split_name << ": " << r.classified << '/' << r.total << " ("
          << format_double(r.efficiency_percent) << "%), mse "
          << format_double(r.ms_error) << '\n';
    out << "overall: " << format_double(overall_efficiency(outcome.evals)) << "%\n";
  }
  a.log_path = (fs::path(cfg.out_dir) / "run.log").string();
  auto log = open_out(a.log_path);
  log << "resolved configuration:\n" << config_echo(cfg);
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  return outcome;
}

void generate_synthetic_dataset(const DatasetSchema& schema, std::size_t n,
                                std::uint64_t seed, double noise,
                                const std::string& path) {
  schema.validate();
  if (n < 4) throw ConfigError("generate_synthetic_dataset: n must be >= 4");
  Rng rng(seed);
  auto out = open_out(path);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t cls = rng.uniform01() < 0.5 ? 0 : 1;
    std::size_t label_cls = cls;
    if (rng.uniform01() < noise) label_cls = 1 - label_cls;
    if (schema.skip_leading_columns > 0)
      for (std::size_t c = 0; c < schema.skip_leading_columns; ++c)
        out << (1000000 + row) << ',';
    for (std::size_t a = 0; a < schema.input_attributes; ++a) {
      // class-conditional means 3 and 7 on a 1..10 scale, uniform spread +-2.5
      const double center = cls == 0 ? 3.0 : 7.0;
      double v = center + rng.uniform_symmetric(2.5);
      v = std::min(10.0, std::max(1.0, v));
      out << format_double(v) << ',';
    }
    out << label_cls << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace mfnnca
