#include "mfnnca/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "mfnnca/errors.hpp"
#include "mfnnca/rng.hpp"

namespace mfnnca {

void DatasetSchema::validate() const {
  if (name.empty()) throw ConfigError("schema: name is empty");
  if (input_attributes < 1) throw ConfigError("schema: input_attributes must be >= 1");
  if (output_units < 1 || output_classes < 2)
    throw ConfigError("schema: output_units >= 1 and output_classes >= 2 required");
  if (target_encoding == TargetEncoding::SingleUnit && output_units != 1)
    throw ConfigError("schema: single_unit encoding requires output_units = 1");
  if (target_encoding == TargetEncoding::OnePerClass && output_units != output_classes)
    throw ConfigError("schema: one_per_class encoding requires output_units = output_classes");
}

SplitSpec split_spec_for(std::size_t total) {
  if (total < 4) throw ConfigError("split_spec_for: dataset too small");
  SplitSpec s;
  // round-half-up of n/2 and n/4, remainder tests
  s.train_n = (2 * total + 2) / 4;  // round(total/2)
  s.valid_n = (total + 2) / 4;      // round(total/4)
  s.test_n = total - s.train_n - s.valid_n;
  return s;
}

namespace {

const double kMissing = std::numeric_limits<double>::quiet_NaN();

double parse_field(const std::string& field, std::size_t line_no, bool allow_missing) {
  std::string t = field;
  // trim
  const auto b = t.find_first_not_of(" \t\r");
  const auto e = t.find_last_not_of(" \t\r");
  t = (b == std::string::npos) ? "" : t.substr(b, e - b + 1);
  if (t == "?") {
    if (!allow_missing)
      throw ParseError("line " + std::to_string(line_no) + ": missing value not allowed here");
    return kMissing;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    if (!std::isfinite(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad numeric field '" + t + "'");
  }
}

}  // namespace

std::vector<RawRecord> load_raw(const std::string& path, const DatasetSchema& schema) {
  schema.validate();
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);

  const std::size_t expected_cols = schema.skip_leading_columns + schema.input_attributes + 1;
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != expected_cols)
      throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected_cols) + " columns, got " +
                       std::to_string(fields.size()));
    RawRecord rec;
    rec.attributes.reserve(schema.input_attributes);
    for (std::size_t c = schema.skip_leading_columns; c < expected_cols - 1; ++c) {
      const bool allow = schema.missing_policy == MissingPolicy::AttributeMean;
      rec.attributes.push_back(parse_field(fields[c], line_no, allow));
    }
    rec.label = parse_field(fields.back(), line_no, false);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ParseError(path + ": dataset file is empty");
  if (schema.total_examples != 0 && records.size() != schema.total_examples)
    throw ParseError(path + ": expected " + std::to_string(schema.total_examples) +
                     " records, got " + std::to_string(records.size()));

  if (schema.missing_policy == MissingPolicy::AttributeMean) {
    for (std::size_t a = 0; a < schema.input_attributes; ++a) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& r : records)
        if (!std::isnan(r.attributes[a])) {
          sum += r.attributes[a];
          ++n;
        }
      if (n == 0)
        throw ParseError(path + ": attribute " + std::to_string(a) + " is entirely missing");
      const double mean = sum / static_cast<double>(n);
      for (auto& r : records)
        if (std::isnan(r.attributes[a])) r.attributes[a] = mean;
    }
  }
  return records;
}

PatternSet encode(const std::vector<RawRecord>& records, const DatasetSchema& schema,
                  std::vector<std::string>* warnings) {
  schema.validate();
  if (records.empty()) throw InputError("encode: no records");
  const std::size_t n_attr = schema.input_attributes;

  std::vector<double> lo(n_attr, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n_attr, -std::numeric_limits<double>::infinity());
  for (const auto& r : records)
    for (std::size_t a = 0; a < n_attr; ++a) {
      lo[a] = std::min(lo[a], r.attributes[a]);
      hi[a] = std::max(hi[a], r.attributes[a]);
    }

  // Label -> class index per the schema rule.
  std::map<double, std::size_t> class_of;
  if (schema.label_rule == LabelRule::Distinct) {
    std::set<double> labels;
    for (const auto& r : records) labels.insert(r.label);
    if (labels.size() != schema.output_classes)
      throw ParseError("encode: found " + std::to_string(labels.size()) +
                       " distinct labels, schema declares " +
                       std::to_string(schema.output_classes) + " classes");
    std::size_t idx = 0;
    for (double v : labels) class_of[v] = idx++;
  }
  auto to_class = [&](double label) -> std::size_t {
    if (schema.label_rule == LabelRule::NonzeroBinary) return label != 0.0 ? 1 : 0;
    return class_of.at(label);
  };

  PatternSet ps;
  ps.inputs.reserve(records.size());
  ps.targets.reserve(records.size());
  for (const auto& r : records) {
    std::vector<double> x(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a) {
      if (hi[a] == lo[a]) {
        x[a] = 0.0;
      } else {
        x[a] = (r.attributes[a] - lo[a]) / (hi[a] - lo[a]);
      }
    }
    const std::size_t cls = to_class(r.label);
    if (cls >= schema.output_classes)
      throw ParseError("encode: label class out of range");
    std::vector<double> t(schema.output_units, 0.0);
    if (schema.target_encoding == TargetEncoding::SingleUnit)
      t[0] = static_cast<double>(cls);
    else
      t[cls] = 1.0;
    ps.inputs.push_back(std::move(x));
    ps.targets.push_back(std::move(t));
  }

  if (warnings != nullptr)
    for (std::size_t a = 0; a < n_attr; ++a)
      if (hi[a] == lo[a])
        warnings->push_back("attribute " + std::to_string(a) +
                            " is constant; encoded as 0.0");
  return ps;
}

SplitDataset split(const PatternSet& patterns, const SplitSpec& spec,
                   const SplitOrder& order) {
  if (spec.total() != patterns.size())
    throw ConfigError("split: spec sums to " + std::to_string(spec.total()) +
                      " but pattern set has " + std::to_string(patterns.size()));

  std::vector<std::size_t> idx(patterns.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (order.kind == SplitOrder::Kind::SeededShuffle) {
    Rng rng(order.seed);
    for (std::size_t i = idx.size() - 1; i > 0; --i)
      std::swap(idx[i], idx[rng.index(i + 1)]);
  }

  auto take = [&](std::size_t begin, std::size_t count) {
    PatternSet out;
    out.inputs.reserve(count);
    out.targets.reserve(count);
    for (std::size_t i = begin; i < begin + count; ++i) {
      out.inputs.push_back(patterns.inputs[idx[i]]);
      out.targets.push_back(patterns.targets[idx[i]]);
    }
    return out;
  };

  SplitDataset ds;
  ds.train = take(0, spec.train_n);
  ds.valid = take(spec.train_n, spec.valid_n);
  ds.test = take(spec.train_n + spec.valid_n, spec.test_n);
  return ds;
}

namespace {

TargetEncoding parse_encoding(const std::string& v) {
  if (v == "single_unit") return TargetEncoding::SingleUnit;
  if (v == "one_per_class") return TargetEncoding::OnePerClass;
  throw ConfigError("schema: unknown encoding '" + v + "'");
}

MissingPolicy parse_missing(const std::string& v) {
  if (v == "attribute_mean") return MissingPolicy::AttributeMean;
  if (v == "reject") return MissingPolicy::Reject;
  throw ConfigError("schema: unknown missing policy '" + v + "'");
}

LabelRule parse_label_rule(const std::string& v) {
  if (v == "distinct") return LabelRule::Distinct;
  if (v == "nonzero_binary") return LabelRule::NonzeroBinary;
  throw ConfigError("schema: unknown label rule '" + v + "'");
}

}  // namespace

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open schema file: " + path);
  DatasetSchema s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ": line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "name") s.name = val;
    else if (key == "input_attributes") s.input_attributes = std::stoul(val);
    else if (key == "output_units") s.output_units = std::stoul(val);
    else if (key == "output_classes") s.output_classes = std::stoul(val);
    else if (key == "encoding") s.target_encoding = parse_encoding(val);
    else if (key == "missing") s.missing_policy = parse_missing(val);
    else if (key == "label_rule") s.label_rule = parse_label_rule(val);
    else if (key == "skip_leading_columns") s.skip_leading_columns = std::stoul(val);
    else if (key == "total_examples") s.total_examples = std::stoul(val);
    else
      throw ParseError(path + ": line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  s.validate();
  return s;
}

DatasetSchema builtin_schema(const std::string& name) {
  DatasetSchema s;
  s.name = name;
  if (name == "cancer") {
    s.input_attributes = 9;
    s.output_units = 1;
    s.output_classes = 2;
    s.target_encoding = TargetEncoding::SingleUnit;
    s.skip_leading_columns = 1;  // patient id
    s.total_examples = 699;
  } else if (name == "cancer1") {
    s.input_attributes = 9;
    s.output_units = 2;
    s.output_classes = 2;
    s.target_encoding = TargetEncoding::OnePerClass;
    s.skip_leading_columns = 1;
    s.total_examples = 699;
  } else if (name == "heart") {
    s.input_attributes = 13;
    s.output_units = 1;
    s.output_classes = 2;
    s.target_encoding = TargetEncoding::SingleUnit;
    s.label_rule = LabelRule::NonzeroBinary;  // Cleveland 0-4 label, 0 vs >=1
    s.total_examples = 303;
  } else if (name == "diabetes") {
    s.input_attributes = 8;
    s.output_units = 2;
    s.output_classes = 2;
    s.target_encoding = TargetEncoding::OnePerClass;
    s.total_examples = 768;
  } else {
    throw ConfigError("unknown builtin dataset schema: " + name);
  }
  s.validate();
  return s;
}

std::vector<std::string> builtin_schema_names() {
  return {"cancer", "cancer1", "heart", "diabetes"};
}

}  // namespace mfnnca
