#include <doctest.h>

#include <cstdio>
#include <limits>

#include "mfnnca/errors.hpp"
#include "mfnnca/experiment.hpp"
#include "mfnnca/growth.hpp"

using namespace mfnnca;

namespace {

// Small synthetic two-cluster problem in the cancer-style single-unit layout.
struct Fixture {
  DatasetSchema schema;
  SplitDataset data;
  NetworkConfig net_cfg;
  TrainConfig train_cfg;

  explicit Fixture(std::size_t n = 120, double noise = 0.1) {
    schema = builtin_schema("cancer");
    schema.total_examples = 0;
    const std::string path = "test_growth_tmp.csv";
    generate_synthetic_dataset(schema, n, 77, noise, path);
    const auto records = load_raw(path, schema);
    std::remove(path.c_str());
    const auto patterns = encode(records, schema);
    data = split(patterns, split_spec_for(n), SplitOrder::file_order());
    net_cfg = {schema.input_attributes, 1, schema.output_units, 0.5, 3};
    train_cfg.epochs_per_phase = 30;
    train_cfg.seed = 5;
  }
};

PhaseRecord phase_with(double overall, std::size_t h) {
  PhaseRecord p;
  p.hidden_units = h;
  p.overall_efficiency_percent = overall;
  return p;
}

}  // namespace

TEST_CASE("select_best_phase maximizes overall efficiency, ties to fewer units") {
  CHECK(select_best_phase({phase_with(97.14, 1), phase_with(97.14, 2),
                           phase_with(97.00, 3), phase_with(97.71, 4)}) == 3);
  CHECK(select_best_phase({phase_with(50.0, 1)}) == 0);
  CHECK(select_best_phase({phase_with(90.0, 1), phase_with(90.0, 2)}) == 0);
  CHECK_THROWS_AS(select_best_phase({}), InputError);
}

TEST_CASE("vacuous criteria stop after exactly one phase") {
  Fixture fx;
  StoppingCriteria stop;
  stop.max_validation_error = std::numeric_limits<double>::infinity();
  stop.min_efficiency = 0.0;
  stop.max_hidden_units = 8;
  auto [net, trace] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  CHECK(trace.phases.size() == 1);
  CHECK(trace.termination == Termination::CriteriaMet);
  CHECK(trace.phases[0].hidden_units == 1);
  CHECK(net.hidden_units() == 1);
}

TEST_CASE("unreachable criteria exhaust the hidden-unit budget") {
  Fixture fx(120, 0.4);  // noisy labels: perfection is unreachable
  StoppingCriteria stop;
  stop.max_validation_error = 0.0;
  stop.min_efficiency = 100.0;
  stop.max_hidden_units = 4;
  auto [net, trace] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  CHECK(trace.phases.size() == 4);
  CHECK(trace.termination == Termination::BudgetExhausted);
  for (std::size_t i = 0; i < trace.phases.size(); ++i)
    CHECK(trace.phases[i].hidden_units == i + 1);
}

TEST_CASE("each phase warm-starts from the previous checkpoint plus one unit") {
  Fixture fx;
  StoppingCriteria stop;
  stop.max_validation_error = 0.0;
  stop.min_efficiency = 100.0;
  stop.max_hidden_units = 3;
  auto [net, trace] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  REQUIRE(trace.checkpoints.size() == 3);
  // Retrain each phase independently from the grown previous checkpoint and
  // compare bit for bit.
  Rng grow_rng(fx.net_cfg.seed + 1);
  for (std::size_t i = 1; i < trace.checkpoints.size(); ++i) {
    const Network grown = add_hidden_unit(
        trace.checkpoints[i - 1], NewUnitInit::random_in_range(fx.net_cfg.init_range),
        grow_rng);
    TrainConfig phase_cfg = fx.train_cfg;
    phase_cfg.seed = fx.train_cfg.seed + i;
    auto [retrained, history] = train_phase(grown, fx.data.train, &fx.data.valid, phase_cfg);
    CHECK(retrained.w_in == trace.checkpoints[i].w_in);
    CHECK(retrained.w_out == trace.checkpoints[i].w_out);
    CHECK(retrained.b_hidden == trace.checkpoints[i].b_hidden);
    CHECK(retrained.b_out == trace.checkpoints[i].b_out);
  }
}

TEST_CASE("phase records are internally consistent") {
  Fixture fx;
  StoppingCriteria stop;
  stop.max_validation_error = 0.0;
  stop.min_efficiency = 100.0;
  stop.max_hidden_units = 2;
  auto [net, trace] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  std::size_t cumulative = 0;
  for (const auto& p : trace.phases) {
    cumulative += p.epochs_this_phase;
    CHECK(p.cumulative_epochs == cumulative);
    CHECK(p.train.classified <= p.train.total);
    CHECK(p.overall_efficiency_percent ==
          doctest::Approx(overall_efficiency({p.train, p.valid, p.test})).epsilon(1e-12));
    CHECK(p.train.ms_error >= 0.0);
  }
  CHECK(trace.best_phase_index < trace.phases.size());
}

TEST_CASE("full growth runs are bit-exactly repeatable") {
  Fixture fx;
  StoppingCriteria stop;
  stop.max_validation_error = 0.0;
  stop.min_efficiency = 100.0;
  stop.max_hidden_units = 3;
  auto [net_a, trace_a] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  auto [net_b, trace_b] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  CHECK(net_a.w_in == net_b.w_in);
  CHECK(net_a.w_out == net_b.w_out);
  REQUIRE(trace_a.phases.size() == trace_b.phases.size());
  for (std::size_t i = 0; i < trace_a.phases.size(); ++i) {
    CHECK(trace_a.phases[i].train.ms_error == trace_b.phases[i].train.ms_error);
    CHECK(trace_a.phases[i].overall_efficiency_percent ==
          trace_b.phases[i].overall_efficiency_percent);
  }
}

TEST_CASE("strict mode checks efficiency on the validation split") {
  Fixture fx;
  // Thresholds that the validation split cannot satisfy but the test split
  // trivially does are awkward to construct; instead check that strict mode
  // still terminates and flags criteria_met only when the valid split passes.
  StoppingCriteria stop;
  stop.max_validation_error = std::numeric_limits<double>::infinity();
  stop.min_efficiency = 0.0;
  stop.strict = true;
  auto [net, trace] = run_mfnnca(fx.data, fx.schema, fx.net_cfg, fx.train_cfg, stop);
  CHECK(trace.termination == Termination::CriteriaMet);
  CHECK(trace.phases.size() == 1);
}

TEST_CASE("dimension mismatches are configuration errors") {
  Fixture fx;
  NetworkConfig bad = fx.net_cfg;
  bad.input_dim = 4;
  StoppingCriteria stop;
  CHECK_THROWS_AS(run_mfnnca(fx.data, fx.schema, bad, fx.train_cfg, stop), ConfigError);
}

TEST_CASE("stopping criteria validation") {
  StoppingCriteria stop;
  stop.min_efficiency = 101.0;
  CHECK_THROWS_AS(stop.validate(), ConfigError);
  stop = StoppingCriteria{};
  stop.max_hidden_units = 0;
  CHECK_THROWS_AS(stop.validate(), ConfigError);
  stop = StoppingCriteria{};
  stop.max_validation_error = -1.0;
  CHECK_THROWS_AS(stop.validate(), ConfigError);
}
