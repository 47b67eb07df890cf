#include "fingraph/io.hpp"

#include "fingraph/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace fingraph {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  std::string out = s.substr(a, b - a);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_missing(const std::string& cell) {
  const std::string l = lower(cell);
  return l.empty() || l == "na" || l == "nan" || l == "null";
}

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvTable read_csv_table(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw DataError("CSV input is empty");
  CsvTable table;
  std::vector<std::string> header = split(line);
  const bool dated = !header.empty() && lower(header.front()) == "date";
  if (dated) header.erase(header.begin());
  if (header.empty()) throw DataError("CSV header has no data columns");
  table.columns = header;
  const std::size_t width = header.size() + (dated ? 1 : 0);

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != width) {
      throw DataError("CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                      " fields, expected " + std::to_string(width));
    }
    std::vector<double> row;
    bool missing = false;
    for (std::size_t c = dated ? 1 : 0; c < cells.size(); ++c) {
      if (is_missing(cells[c])) {
        missing = true;
        continue;
      }
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v)) {
        throw DataError("CSV line " + std::to_string(line_no) + ", column '" +
                        header[c - (dated ? 1 : 0)] + "': cannot parse '" + cells[c] + "'");
      }
      row.push_back(v);
    }
    if (missing) {
      ++table.dropped_rows;
      continue;
    }
    if (dated) table.timestamps.push_back(cells.front());
    rows.push_back(std::move(row));
  }

  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return table;
}

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv_table(in);
}

void write_csv_table(std::ostream& out, const std::vector<std::string>& columns, const Matrix& values,
                     const std::vector<std::string>& timestamps) {
  if (static_cast<Index>(columns.size()) != values.cols()) {
    throw DimensionError("column names do not match the matrix width");
  }
  const bool dated = !timestamps.empty();
  if (dated && static_cast<Index>(timestamps.size()) != values.rows()) {
    throw DimensionError("timestamps do not match the matrix height");
  }
  if (dated) out << "date,";
  for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << columns[j];
  out << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    if (dated) out << timestamps[static_cast<std::size_t>(i)] << ',';
    for (Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << format_double(values(i, j));
    out << '\n';
  }
}

void write_csv_table(const std::string& path, const std::vector<std::string>& columns,
                     const Matrix& values, const std::vector<std::string>& timestamps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_csv_table(out, columns, values, timestamps);
}

void write_trace_csv(std::ostream& out, const SolverTrace& trace) {
  out << "iter,r_norm,s_norm,v_norm,lagrangian\n";
  for (const TraceRecord& rec : trace) {
    out << rec.iter << ',' << format_double(rec.r_norm) << ',' << format_double(rec.s_norm) << ','
        << format_double(rec.v_norm) << ',' << format_double(rec.lagrangian) << '\n';
  }
}

SolverTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || trim(line) != "iter,r_norm,s_norm,v_norm,lagrangian") {
    throw DataError("trace CSV header must be iter,r_norm,s_norm,v_norm,lagrangian");
  }
  SolverTrace trace;
  while (next_line(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 5) throw DataError("trace row has " + std::to_string(cells.size()) + " fields");
    TraceRecord rec;
    double fields[4];
    for (int c = 0; c < 4; ++c) {
      const std::string& cell = cells[static_cast<std::size_t>(c + 1)];
      if (lower(cell) == "nan") {
        fields[c] = std::numeric_limits<double>::quiet_NaN();
      } else if (!parse_double(cell, fields[c])) {
        throw DataError("trace cell '" + cell + "' is not a number");
      }
    }
    const auto res = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), rec.iter);
    if (res.ec != std::errc()) throw DataError("trace iteration '" + cells[0] + "' is not an integer");
    rec.r_norm = fields[0];
    rec.s_norm = fields[1];
    rec.v_norm = fields[2];
    rec.lagrangian = fields[3];
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace fingraph
