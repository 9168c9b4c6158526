#include "borelab/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "borelab/error.hpp"

namespace borelab::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool to_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& os, const tw::Profile& p) {
  os << "xi,u,v,eta\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << format17(p.xi[i]) << ',' << format17(p.u[i]) << ',' << format17(p.v[i]) << ','
       << format17(p.eta[i]) << '\n';
}

void write_snapshot_csv(std::ostream& os, const pde::Grid& grid, const pde::FieldPair& s) {
  os << "x,eta,u\n";
  for (std::size_t i = 0; i < grid.n; ++i)
    os << format17(grid.x(i)) << ',' << format17(s.eta[i]) << ',' << format17(s.u[i]) << '\n';
}

void write_error_series_csv(std::ostream& os, const pde::ErrorSeries& s) {
  os << "t,y\n";
  for (std::size_t i = 0; i < s.times.size(); ++i)
    os << format17(s.times[i]) << ',' << format17(s.y[i]) << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw InvalidArgument("CSV lacks a column named '" + name + "'");
}

CsvTable parse_csv(const std::string& text, const std::string& source, std::size_t min_columns) {
  CsvTable table;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto cells = split(stripped);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : cells) {
      double v = 0.0;
      if (!to_double(cell, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (first && !numeric) {
      table.header = cells;
      first = false;
      continue;
    }
    first = false;
    std::ostringstream where;
    where << source << ":" << line << ": ";
    if (!numeric) throw InvalidArgument(where.str() + "non-numeric value in row");
    if (row.size() < min_columns) {
      where << "expected at least " << min_columns << " columns, found " << row.size();
      throw InvalidArgument(where.str());
    }
    if (!table.header.empty() && row.size() != table.header.size()) {
      where << "row has " << row.size() << " columns but the header has " << table.header.size();
      throw InvalidArgument(where.str());
    }
    for (double v : row)
      if (!std::isfinite(v)) throw InvalidArgument(where.str() + "non-finite value");
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line);
  }
  return table;
}

CsvTable read_csv(const std::string& path, std::size_t min_columns) {
  return parse_csv(slurp(path), path, min_columns);
}

ProfileTable read_profile_csv(const std::string& path) {
  const CsvTable t = read_csv(path, 4);
  ProfileTable p;
  std::size_t cx = 0, cu = 1, cv = 2, ce = 3;
  if (!t.header.empty()) {
    cx = t.column("xi");
    cu = t.column("u");
    cv = t.column("v");
    ce = t.column("eta");
  }
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    if (!p.xi.empty() && !(r[cx] > p.xi.back())) {
      std::ostringstream os;
      os << path << ":" << t.line_numbers[i] << ": xi must be strictly increasing";
      throw InvalidArgument(os.str());
    }
    p.xi.push_back(r[cx]);
    p.u.push_back(r[cu]);
    p.v.push_back(r[cv]);
    p.eta.push_back(r[ce]);
  }
  if (p.xi.size() < 2) throw InvalidArgument(path + ": profile has fewer than 2 rows");
  return p;
}

}  // namespace borelab::io
