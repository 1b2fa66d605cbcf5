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

#ifndef DPKM_IO_H_
#define DPKM_IO_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dpkm/core.h"

namespace dpkm {

// Malformed CSV input. Row and column are 1-based.
class CsvError : public std::runtime_error {
 public:
  CsvError(size_t row, size_t column, const std::string& what);

  size_t row() const { return row_; }
  size_t column() const { return column_; }

 private:
  size_t row_;
  size_t column_;
};

// Comma-separated real rows of equal width, no header unless skip_header.
// Blank lines are ignored. Throws CsvError or DiameterViolation.
Dataset ReadCsvDataset(std::istream& in, double diameter,
                       bool skip_header = false);
Dataset IngestCsv(const std::string& path, double diameter,
                  bool skip_header = false);

// Round-trippable (%.17g) rows.
void WriteCsvDataset(std::ostream& out, const Dataset& data);

}  // namespace dpkm

#endif  // DPKM_IO_H_
