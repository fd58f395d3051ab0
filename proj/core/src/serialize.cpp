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

#include "coorbit/serialize.hpp"

#include <cstdio>

#include <json.hpp>

namespace coorbit {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

json complex_array(const std::vector<cplx>& values) {
  json out = json::array();
  for (const cplx& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

std::vector<cplx> complex_values(const json& arr, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string(what) + ": expected an array");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw FormatError(std::string(what) + ": complex values are [re, im] pairs");
    }
    out.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return out;
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string grid_to_json(const IndexGrid& grid) {
  json nodes = json::array();
  for (const auto& c : grid.nodes()) nodes.push_back({{"coords", c}});
  const json doc = {{"id", grid.id()}, {"nodes", nodes}, {"weights", grid.weights()}};
  return doc.dump();
}

IndexGrid grid_from_json(const std::string& text) {
  const json doc = parse(text, "grid_from_json");
  return guarded("grid_from_json", [&] {
    std::vector<std::vector<double>> nodes;
    for (const json& n : doc.at("nodes")) nodes.push_back(n.at("coords").get<std::vector<double>>());
    return IndexGrid(doc.at("id").get<std::string>(), std::move(nodes),
                     doc.at("weights").get<std::vector<double>>());
  });
}

std::string samples_to_json(const SampleVector& samples) {
  const json doc = {{"grid_id", samples.grid_id}, {"values", complex_array(samples.values)}};
  return doc.dump();
}

SampleVector samples_from_json(const std::string& text) {
  const json doc = parse(text, "samples_from_json");
  return guarded("samples_from_json", [&] {
    return SampleVector{doc.at("grid_id").get<std::string>(),
                        complex_values(doc.at("values"), "samples_from_json")};
  });
}

std::string operator_to_json(const Operator& op) {
  std::vector<cplx> entries;
  entries.reserve(static_cast<std::size_t>(op.dim() * op.dim()));
  for (Index i = 0; i < op.dim(); ++i) {
    for (Index j = 0; j < op.dim(); ++j) entries.push_back(op(i, j));
  }
  const json doc = {{"dim", op.dim()}, {"entries", complex_array(entries)}};
  return doc.dump();
}

Operator operator_from_json(const std::string& text) {
  const json doc = parse(text, "operator_from_json");
  return guarded("operator_from_json", [&] {
    const auto dim = doc.at("dim").get<Index>();
    const std::vector<cplx> entries = complex_values(doc.at("entries"), "operator_from_json");
    if (dim <= 0 || static_cast<Index>(entries.size()) != dim * dim) {
      throw FormatError("operator_from_json: entry count does not match dim");
    }
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) m(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
    }
    return Operator(std::move(m));
  });
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace coorbit
