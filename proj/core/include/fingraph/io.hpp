#pragma once

#include "fingraph/graph_ops.hpp"
#include "fingraph/solvers.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fingraph {

/// Numeric CSV: a header of column names, then one observation per row. A
/// leading column named "date" is kept as text. Rows with an empty, NA or
/// NaN cell are dropped and counted.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::string> timestamps;
  Matrix values;
  Index dropped_rows = 0;
};

CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table(const std::string& path);

void write_csv_table(std::ostream& out, const std::vector<std::string>& columns, const Matrix& values,
                     const std::vector<std::string>& timestamps = {});
void write_csv_table(const std::string& path, const std::vector<std::string>& columns,
                     const Matrix& values, const std::vector<std::string>& timestamps = {});

/// Columns iter,r_norm,s_norm,v_norm,lagrangian; doubles written with 17
/// significant digits so they parse back exactly.
void write_trace_csv(std::ostream& out, const SolverTrace& trace);
SolverTrace read_trace_csv(std::istream& in);

/// Shortest-safe round-trip formatting used by every writer.
std::string format_double(double value);

}  // namespace fingraph
