#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mfnnca {

enum class TargetEncoding {
  SingleUnit,   // one output unit, target in {0, 1}
  OnePerClass,  // one-hot row per pattern
};

enum class MissingPolicy {
  AttributeMean,  // impute "?" with the column mean over non-missing entries
  Reject,         // treat "?" as a parse error
};

// How raw label values map to class indices.
enum class LabelRule {
  Distinct,       // sorted distinct label values -> 0..C-1
  NonzeroBinary,  // 0 -> class 0, anything else -> class 1 (Cleveland heart)
};

struct DatasetSchema {
  std::string name;
  std::size_t input_attributes = 0;
  std::size_t output_units = 1;
  std::size_t output_classes = 2;
  TargetEncoding target_encoding = TargetEncoding::SingleUnit;
  MissingPolicy missing_policy = MissingPolicy::AttributeMean;
  LabelRule label_rule = LabelRule::Distinct;
  // Leading CSV columns to drop before the attributes (e.g. the patient id
  // column of the raw UCI breast-cancer file).
  std::size_t skip_leading_columns = 0;
  // Declared dataset size; 0 means unknown. When nonzero, loaders verify it
  // and split_spec_for() derives the train/valid/test partition from it.
  std::size_t total_examples = 0;

  void validate() const;
};

// One raw CSV record: attribute values (NaN marks a missing entry prior to
// imputation) plus the label.
struct RawRecord {
  std::vector<double> attributes;
  double label = 0.0;
};

struct PatternSet {
  std::vector<std::vector<double>> inputs;   // N x input_dim, each in [0,1]
  std::vector<std::vector<double>> targets;  // N x output_dim, entries in {0,1}

  std::size_t size() const { return inputs.size(); }
  std::size_t input_dim() const { return inputs.empty() ? 0 : inputs[0].size(); }
  std::size_t output_dim() const { return targets.empty() ? 0 : targets[0].size(); }
};

struct SplitSpec {
  std::size_t train_n = 0;
  std::size_t valid_n = 0;
  std::size_t test_n = 0;

  std::size_t total() const { return train_n + valid_n + test_n; }
};

struct SplitDataset {
  PatternSet train;
  PatternSet valid;
  PatternSet test;
};

// Pattern order used when cutting the three splits.
struct SplitOrder {
  enum class Kind { FileOrder, SeededShuffle };
  Kind kind = Kind::FileOrder;
  std::uint64_t seed = 0;

  static SplitOrder file_order() { return {Kind::FileOrder, 0}; }
  static SplitOrder seeded_shuffle(std::uint64_t seed) {
    return {Kind::SeededShuffle, seed};
  }
};

// Proben1 convention: first half trains, next quarter validates, the rest
// tests, with halves rounded to nearest. Reproduces the published partition
// sizes for all four bundled schemas (cancer 350/175/174, heart 152/76/75,
// diabetes 384/192/192).
SplitSpec split_spec_for(std::size_t total_examples);

// Reads comma-separated numeric records, attributes then label, "?" as the
// missing marker. Missing labels are always an error. Throws ParseError with
// the 1-based line number on malformed input.
std::vector<RawRecord> load_raw(const std::string& path, const DatasetSchema& schema);

// Min-max normalizes each attribute over the full record list and maps labels
// to targets per the schema encoding. Constant attributes encode to 0.0 (a
// warning is appended to *warnings when provided).
PatternSet encode(const std::vector<RawRecord>& records, const DatasetSchema& schema,
                  std::vector<std::string>* warnings = nullptr);

SplitDataset split(const PatternSet& patterns, const SplitSpec& spec,
                   const SplitOrder& order);

// Parses a flat key=value schema file.
DatasetSchema load_schema(const std::string& path);

// The four bundled benchmark schemas, keyed by name (cancer, cancer1, heart,
// diabetes). Throws ConfigError for unknown names.
DatasetSchema builtin_schema(const std::string& name);
std::vector<std::string> builtin_schema_names();

}  // namespace mfnnca
