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

#ifndef QMUX_CSV_HPP
#define QMUX_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

// Minimal CSV table with '#'-prefixed header comments, '.' decimal
// separator, and a mandatory column-name line. Numbers are written with 12
// significant digits so tables round-trip losslessly at double precision for
// every value this toolkit emits.
namespace qmux::csv {

struct Table {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write(std::ostream& os, const Table& table);
void write_file(const std::string& path, const Table& table);

/// Parses a table previously produced by write(). Throws DomainError with
/// line information on malformed input.
Table read(std::istream& is);
Table read_file(const std::string& path);

std::string format_double(double value);

}  // namespace qmux::csv

#endif  // QMUX_CSV_HPP
