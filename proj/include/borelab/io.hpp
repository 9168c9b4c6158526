#pragma once

// CSV import/export. Every float is written with 17 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "borelab/pde.hpp"
#include "borelab/profile.hpp"

namespace borelab::io {

std::string format17(double v);

void write_profile_csv(std::ostream& os, const tw::Profile& profile);
void write_snapshot_csv(std::ostream& os, const pde::Grid& grid, const pde::FieldPair& state);
void write_error_series_csv(std::ostream& os, const pde::ErrorSeries& series);

/// Numeric table. A first row that does not parse as numbers is taken as the
/// header. Malformed rows throw InvalidArgument naming the line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;

  /// Column index by header name; throws InvalidArgument when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source, std::size_t min_columns);
CsvTable read_csv(const std::string& path, std::size_t min_columns);

/// Sampled profile as read back from a profile CSV.
struct ProfileTable {
  std::vector<double> xi;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> eta;
};

ProfileTable read_profile_csv(const std::string& path);

}  // namespace borelab::io
