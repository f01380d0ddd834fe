// Copyright 2026 The qmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmux/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmux/errors.hpp"

namespace qmux::csv {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write(std::ostream& os, const Table& table) {
  for (const auto& c : table.comments) {
    os << "# " << c << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ",";
    os << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << format_double(row[i]);
    }
    os << "\n";
  }
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream os(path);
  if (!os) throw DomainError("csv: cannot open for writing: " + path);
  write(os, table);
}

Table read(std::istream& is) {
  Table table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(" \t", 1);
      table.comments.push_back(
          start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      if (table.columns.empty()) {
        throw DomainError("csv: empty header at line " +
                          std::to_string(line_no));
      }
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DomainError("csv: bad number '" + cell + "' at line " +
                          std::to_string(line_no));
      }
    }
    if (row.size() != table.columns.size()) {
      throw DomainError("csv: row width mismatch at line " +
                        std::to_string(line_no));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw DomainError("csv: missing header line");
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("csv: cannot open for reading: " + path);
  return read(is);
}

}  // namespace qmux::csv
