// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORBIT_SERIALIZE_HPP
#define COORBIT_SERIALIZE_HPP

#include <string>

#include "coorbit/frame.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON documents. Doubles are written in shortest round-trip form, so
// parse(write(x)) reproduces every bit.

/// {"id":..., "nodes":[{"coords":[...]},...], "weights":[...]}
std::string grid_to_json(const IndexGrid& grid);
IndexGrid grid_from_json(const std::string& text);

/// {"grid_id":..., "values":[[re,im],...]}
std::string samples_to_json(const SampleVector& samples);
SampleVector samples_from_json(const std::string& text);

/// {"dim":n, "entries":[[re,im],...]} in row-major order.
std::string operator_to_json(const Operator& op);
Operator operator_from_json(const std::string& text);

/// Formats a double with 17 significant digits.
std::string format_double(double x);

}  // namespace coorbit

#endif  // COORBIT_SERIALIZE_HPP
