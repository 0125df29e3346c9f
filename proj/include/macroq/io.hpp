// Copyright 2026 The macroq Authors.
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

/**
 * @file
 * JSON state and observable files.
 *
 * State:      {"dimension": D, "kind": "pure"|"density",
 *              "entries": [{"i": .., ["j": ..,] "re": .., "im": ..}, ...]}
 * Observable: {"name": "...", "eigenvalues": [..]}
 *
 * Doubles are written in shortest round-trip form, so a written file parses
 * back to bit-identical values.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "macroq/core.hpp"

namespace macroq::io {

using nlohmann::json;

inline json state_to_json(const State& state) {
  json doc;
  json entries = json::array();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    doc["dimension"] = psi->dimension();
    doc["kind"] = "pure";
    for (const auto& a : psi->amplitudes()) {
      entries.push_back({{"i", a.index}, {"re", a.value.real()}, {"im", a.value.imag()}});
    }
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    doc["dimension"] = rho.dimension();
    doc["kind"] = "density";
    for (const auto& e : rho.entries()) {
      entries.push_back(
          {{"i", e.row}, {"j", e.col}, {"re", e.value.real()}, {"im", e.value.imag()}});
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

inline std::string write_state(const State& state) { return state_to_json(state).dump(2); }

namespace detail {

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& ex) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "': " + ex.what());
  }
}

inline json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    fail(ErrorKind::ParseError, ex.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

inline State state_from_json(const json& doc) {
  const auto dimension = detail::required<Index>(doc, "dimension");
  const auto kind = detail::required<std::string>(doc, "kind");
  const auto entries = detail::required<json>(doc, "entries");
  if (!entries.is_array()) fail(ErrorKind::ParseError, "'entries' must be an array");
  if (kind == "pure") {
    std::vector<Amplitude> amps;
    for (const auto& e : entries) {
      amps.push_back({detail::required<Index>(e, "i"),
                      Complex(detail::required<double>(e, "re"), detail::required<double>(e, "im"))});
    }
    return PureState(dimension, std::move(amps));
  }
  if (kind == "density") {
    std::vector<MatrixEntry> out;
    for (const auto& e : entries) {
      out.push_back({detail::required<Index>(e, "i"), detail::required<Index>(e, "j"),
                     Complex(detail::required<double>(e, "re"), detail::required<double>(e, "im"))});
    }
    return DensityMatrix(dimension, std::move(out));
  }
  fail(ErrorKind::ParseError, "unknown state kind '" + kind + "'");
}

inline State read_state(std::string_view text) { return state_from_json(detail::parse(text)); }

inline json observable_to_json(const Observable& obs) {
  return {{"name", obs.name()}, {"eigenvalues", obs.eigenvalues()}};
}

inline std::string write_observable(const Observable& obs) { return observable_to_json(obs).dump(2); }

inline Observable observable_from_json(const json& doc) {
  return Observable(detail::required<std::string>(doc, "name"),
                    detail::required<std::vector<double>>(doc, "eigenvalues"));
}

inline Observable read_observable(std::string_view text) {
  return observable_from_json(detail::parse(text));
}

inline State load_state(const std::string& path) { return read_state(detail::slurp(path)); }

inline Observable load_observable(const std::string& path) {
  return read_observable(detail::slurp(path));
}

}  // namespace macroq::io
