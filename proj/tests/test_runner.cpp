#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mfnnca/errors.hpp"
#include "mfnnca/experiment.hpp"
#include "mfnnca/metrics.hpp"
#include "mfnnca/model_io.hpp"

namespace fs = std::filesystem;
using namespace mfnnca;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("runner_tmp") / name) {
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all("runner_tmp", ec);
  }
  std::string str(const std::string& child) const { return (path / child).string(); }
};

// Writes a synthetic dataset + config ready for run_grow.
ExperimentConfig make_config(const TempDir& dir, std::size_t n = 120,
                             std::size_t epochs = 25) {
  DatasetSchema schema = builtin_schema("cancer");
  schema.total_examples = 0;  // bundled schema pins 699; synthetic file is smaller
  generate_synthetic_dataset(schema, n, 9, 0.05, dir.str("synth.csv"));

  std::ofstream sf(dir.str("synth.schema"));
  sf << "name=cancer\ninput_attributes=9\noutput_units=1\noutput_classes=2\n"
     << "encoding=single_unit\nmissing=attribute_mean\nlabel_rule=distinct\n"
     << "skip_leading_columns=1\n";
  sf.close();

  std::ofstream out(dir.str("exp.cfg"));
  out << "data.name=cancer\n"
      << "data.path=" << dir.str("synth.csv") << "\n"
      << "data.schema=" << dir.str("synth.schema") << "\n"
      << "net.seed=21\n"
      << "train.epochs_per_phase=" << epochs << "\n"
      << "train.seed=3\n"
      << "stop.max_validation_error=0\n"
      << "stop.min_efficiency=100\n"
      << "stop.max_hidden_units=2\n"
      << "out.dir=" << dir.str("out") << "\n";
  out.close();
  return parse_experiment_config(dir.str("exp.cfg"));
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MFNNCA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config files parse with overrides") {
  TempDir dir("cfg");
  std::ofstream out(dir.str("a.cfg"));
  out << "# comment\n"
      << "data.name=heart\n"
      << "data.path=x.csv\n"
      << "train.momentum=0.5\n"
      << "stop.strict=true\n";
  out.close();
  ExperimentConfig cfg = parse_experiment_config(dir.str("a.cfg"));
  CHECK(cfg.dataset_name == "heart");
  CHECK(cfg.train.momentum == 0.5);
  CHECK(cfg.stop.strict);
  apply_override(cfg, "train.momentum=0.25");
  CHECK(cfg.train.momentum == 0.25);
  CHECK_THROWS_AS(apply_override(cfg, "nope=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "train.momentum"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "train.momentum=abc"), ConfigError);
}

TEST_CASE("run_grow writes the full artifact set") {
  TempDir dir("grow");
  const ExperimentConfig cfg = make_config(dir);
  const GrowOutcome outcome = run_grow(cfg);

  const auto& a = outcome.artifacts;
  for (const std::string& p :
       {a.model_path, a.trace_path, a.summary_path, a.log_path})
    CHECK(fs::exists(p));
  CHECK(a.checkpoint_paths.size() == outcome.trace.phases.size());
  CHECK(a.error_curve_paths.size() == outcome.trace.phases.size());

  // best model file reloads to the best checkpoint
  const Network best = load_model(a.model_path);
  CHECK(best.w_in == outcome.best.w_in);

  // error curve row count equals the phase epoch budget
  std::istringstream curve(slurp(a.error_curve_paths[0]));
  std::string line;
  std::size_t rows = 0;
  std::getline(curve, line);
  CHECK(line == "epoch,train_error,valid_error");
  while (std::getline(curve, line))
    if (!line.empty()) ++rows;
  CHECK(rows == cfg.train.epochs_per_phase);

  // run log echoes both seeds
  const std::string log = slurp(a.log_path);
  CHECK(log.find("net.seed=21") != std::string::npos);
  CHECK(log.find("train.seed=3") != std::string::npos);
}

TEST_CASE("trace.csv is self-consistent and summary is recomputable from it") {
  TempDir dir("trace");
  const GrowOutcome outcome = run_grow(make_config(dir));
  std::istringstream trace(slurp(outcome.artifacts.trace_path));
  std::string line;
  std::getline(trace, line);  // header
  std::size_t rows = 0;
  while (std::getline(trace, line)) {
    if (line.empty()) continue;
    ++rows;
    std::stringstream ss(line);
    std::vector<std::string> cols;
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    REQUIRE(cols.size() == 17);
    const double classified = std::stod(cols[3]) + std::stod(cols[7]) + std::stod(cols[11]);
    const double total = std::stod(cols[4]) + std::stod(cols[8]) + std::stod(cols[12]);
    CHECK(std::stod(cols[15]) ==
          doctest::Approx(100.0 * classified / total).epsilon(1e-9));
  }
  CHECK(rows == outcome.trace.phases.size());

  // `report` path: summary rebuilt from the trace matches the emitted one
  summarize_trace_csv(outcome.artifacts.trace_path, "cancer", dir.str("rebuilt.txt"));
  const std::string rebuilt = slurp(dir.str("rebuilt.txt"));
  const std::string original = slurp(outcome.artifacts.summary_path);
  CHECK(original.find(rebuilt.substr(0, rebuilt.size() - 1)) != std::string::npos);
}

TEST_CASE("two identical invocations produce byte-identical artifacts") {
  TempDir dir("repro");
  ExperimentConfig cfg = make_config(dir);
  const GrowOutcome a = run_grow(cfg);
  const std::string trace_a = slurp(a.artifacts.trace_path);
  const std::string model_a = slurp(a.artifacts.model_path);
  cfg.out_dir = dir.str("out2");
  const GrowOutcome b = run_grow(cfg);
  CHECK(trace_a == slurp(b.artifacts.trace_path));
  CHECK(model_a == slurp(b.artifacts.model_path));
}

TEST_CASE("run_train_baseline trains a fixed topology") {
  TempDir dir("baseline");
  ExperimentConfig cfg = make_config(dir);
  cfg.net.hidden_units = 3;
  const TrainOutcome outcome = run_train_baseline(cfg);
  CHECK(outcome.net.hidden_units() == 3);
  CHECK(outcome.history.size() == cfg.train.epochs_per_phase);
  REQUIRE(outcome.evals.size() == 3);
  CHECK(outcome.evals[0].split_name == "train");
  CHECK(fs::exists(outcome.artifacts.model_path));
}

TEST_CASE("cli: grow exit codes distinguish outcomes") {
  TempDir dir("cli");
  make_config(dir);  // writes synth.csv, synth.schema and exp.cfg
  const std::string base = "grow -c " + dir.str("exp.cfg");

  // unreachable criteria (as configured) -> budget exhausted -> exit 2
  CHECK(run_cli(base) == 2);
  // vacuous criteria -> exit 0
  CHECK(run_cli(base + " --set stop.max_validation_error=1e9 --set stop.min_efficiency=0") == 0);
  // unreadable dataset path -> exit 1
  CHECK(run_cli(base + " --set data.path=missing.csv") == 1);
}

TEST_CASE("cli: eval rejects a wrong-dimension model") {
  TempDir dir("clieval");
  make_config(dir);
  save_model(init_network({4, 2, 1, 0.5, 1}), dir.str("wrong.txt"));
  const int rc = run_cli("eval -c " + dir.str("exp.cfg") + " -m " + dir.str("wrong.txt") +
                         " --split test");
  CHECK(rc == 1);
}
