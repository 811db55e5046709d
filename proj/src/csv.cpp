#include "fracvar/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace fracvar {
namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool next_row(std::ifstream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

double parse_double(const std::string& field, const std::string& path, int line) {
  double value = 0.0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (ec != std::errc{} || ptr != last) fail(path, line, "bad numeric field '" + field + "'");
  return value;
}

int parse_int(const std::string& field, const std::string& path, int line) {
  int value = 0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (ec != std::errc{} || ptr != last) fail(path, line, "bad integer field '" + field + "'");
  return value;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& q) {
  std::ofstream out = open_out(path);
  out << "k,t";
  for (int c = 1; c <= q.dim; ++c) out << ",Q" << c;
  out << '\n';
  for (int k = 0; k <= q.grid.n_steps; ++k) {
    out << k << ',' << format_double(q.grid.node(k));
    for (int c = 0; c < q.dim; ++c) out << ',' << format_double(q.at(k, c));
    out << '\n';
  }
  finish(out, path);
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  if (!next_row(in, line, lineno)) fail(path, 1, "missing header");
  std::vector<std::string> fields = split_fields(line);
  if (fields.size() < 3 || fields[0] != "k" || fields[1] != "t")
    fail(path, lineno, "expected header k,t,Q1,...");
  const int dim = static_cast<int>(fields.size()) - 2;
  for (int c = 0; c < dim; ++c)
    if (fields[static_cast<size_t>(c) + 2] != "Q" + std::to_string(c + 1))
      fail(path, lineno, "expected header k,t,Q1,...");

  std::vector<double> times;
  std::vector<double> values;
  while (next_row(in, line, lineno)) {
    fields = split_fields(line);
    if (static_cast<int>(fields.size()) != dim + 2) fail(path, lineno, "wrong field count");
    if (parse_int(fields[0], path, lineno) != static_cast<int>(times.size()))
      fail(path, lineno, "node indices must run 0..N in order");
    times.push_back(parse_double(fields[1], path, lineno));
    for (int c = 0; c < dim; ++c)
      values.push_back(parse_double(fields[static_cast<size_t>(c) + 2], path, lineno));
  }
  if (times.size() < 3) fail(path, lineno, "needs nodes 0..N with N >= 2");
  const int n = static_cast<int>(times.size()) - 1;
  return Trajectory(Grid(times.front(), times.back(), n), dim, std::move(values));
}

void write_conservation_csv(const std::string& path, const Grid& grid,
                            const std::vector<double>& samples) {
  if (samples.size() != static_cast<size_t>(grid.n_steps) + 1)
    throw std::invalid_argument("write_conservation_csv: needs one sample per node 0..N");
  std::ofstream out = open_out(path);
  out << "k,t,C\n";
  for (int k = 0; k <= grid.n_steps; ++k)
    out << k << ',' << format_double(grid.node(k)) << ','
        << format_double(samples[static_cast<size_t>(k)]) << '\n';
  finish(out, path);
}

std::vector<double> read_conservation_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  if (!next_row(in, line, lineno) || line != "k,t,C") fail(path, lineno, "expected header k,t,C");
  std::vector<double> samples;
  while (next_row(in, line, lineno)) {
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 3) fail(path, lineno, "wrong field count");
    if (parse_int(fields[0], path, lineno) != static_cast<int>(samples.size()))
      fail(path, lineno, "node indices must run 0..N in order");
    samples.push_back(parse_double(fields[2], path, lineno));
  }
  if (samples.size() < 3) fail(path, lineno, "need rows for nodes 0..N with N >= 2");
  return samples;
}

void write_matrix_csv(const std::string& path, const ShiftMatrix& m) {
  std::ofstream out = open_out(path);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j > 0) out << ',';
      out << static_cast<int>(m.at(i, j));
    }
    out << '\n';
  }
  finish(out, path);
}

std::vector<std::vector<int>> read_matrix_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  std::vector<std::vector<int>> rows;
  while (next_row(in, line, lineno)) {
    const std::vector<std::string> fields = split_fields(line);
    std::vector<int> row;
    row.reserve(fields.size());
    for (const std::string& field : fields) row.push_back(parse_int(field, path, lineno));
    if (!rows.empty() && rows.front().size() != row.size()) fail(path, lineno, "ragged matrix");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fracvar
