// Copyright 2026 The Authors.
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

#include "dpkm/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace dpkm {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string Locate(size_t row, size_t column, const std::string& what) {
  return "row " + std::to_string(row) + ", column " + std::to_string(column) +
         ": " + what;
}

}  // namespace

CsvError::CsvError(size_t row, size_t column, const std::string& what)
    : std::runtime_error(Locate(row, column, what)), row_(row), column_(column) {}

Dataset ReadCsvDataset(std::istream& in, double diameter, bool skip_header) {
  std::vector<Point> points;
  std::string line;
  size_t row = 0;
  size_t width = 0;
  bool header_pending = skip_header;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    Point p;
    std::string_view rest(line);
    size_t column = 0;
    while (true) {
      ++column;
      const auto comma = rest.find(',');
      const std::string_view cell = Trim(rest.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() ||
          ptr != cell.data() + cell.size()) {
        throw CsvError(row, column,
                       "not a number: '" + std::string(cell) + "'");
      }
      p.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (width == 0) {
      width = p.size();
    } else if (p.size() != width) {
      throw CsvError(row, p.size(),
                     "expected " + std::to_string(width) + " columns, found " +
                         std::to_string(p.size()));
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw CsvError(row, 0, "no data rows");
  return Dataset(std::move(points), diameter);
}

Dataset IngestCsv(const std::string& path, double diameter, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadCsvDataset(in, diameter, skip_header);
}

void WriteCsvDataset(std::ostream& out, const Dataset& data) {
  char buf[32];
  for (const Point& p : data.points()) {
    for (size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[j]);
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace dpkm
