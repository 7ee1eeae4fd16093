#include "mfnnca/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mfnnca/errors.hpp"

namespace mfnnca {

namespace {
constexpr const char* kMagic = "MFNNCA-MODEL";
constexpr int kVersion = 1;
}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ' ';
    out << format_double(row[i]);
  }
  out << '\n';
}

std::vector<double> read_row(std::istream& in, std::size_t count, const std::string& what) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("model file truncated while reading " + what);
  std::istringstream ss(line);
  std::vector<double> row(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string tok;
    if (!(ss >> tok))
      throw ParseError("model file: " + what + " has too few values");
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const auto res = std::from_chars(begin, end, row[i]);
    if (res.ec != std::errc{} || res.ptr != end)
      throw ParseError("model file: bad value '" + tok + "' in " + what);
    if (!std::isfinite(row[i]))
      throw ParseError("model file: non-finite value in " + what);
  }
  std::string extra;
  if (ss >> extra)
    throw ParseError("model file: " + what + " has trailing values");
  return row;
}

}  // namespace

void save_model(const Network& net, const std::string& path) {
  net.validate();
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open model file for writing: " + path);
  out << kMagic << ' ' << kVersion << '\n';
  out << net.input_dim() << ' ' << net.hidden_units() << ' ' << net.output_dim() << '\n';
  for (const auto& row : net.w_in) write_row(out, row);
  write_row(out, net.b_hidden);
  for (const auto& row : net.w_out) write_row(out, row);
  write_row(out, net.b_out);
  if (!out) throw ParseError("write failed: " + path);
}

Network load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic)
    throw ParseError(path + ": not a model file (bad magic)");
  if (version != kVersion)
    throw ParseError(path + ": unsupported model format version " + std::to_string(version));
  long long in_dim = 0, hidden = 0, out_dim = 0;
  if (!(in >> in_dim >> hidden >> out_dim))
    throw ParseError(path + ": bad dimension line");
  if (in_dim < 1 || hidden < 1 || out_dim < 1)
    throw ParseError(path + ": dimensions must all be >= 1");
  in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');

  Network net;
  for (long long j = 0; j < hidden; ++j)
    net.w_in.push_back(read_row(in, static_cast<std::size_t>(in_dim), "w_in row"));
  net.b_hidden = read_row(in, static_cast<std::size_t>(hidden), "b_hidden");
  for (long long k = 0; k < out_dim; ++k)
    net.w_out.push_back(read_row(in, static_cast<std::size_t>(hidden), "w_out row"));
  net.b_out = read_row(in, static_cast<std::size_t>(out_dim), "b_out");
  net.validate();
  return net;
}

}  // namespace mfnnca
