/*
 Copyright 2026 The Stackelberg Solver Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "stackelberg/game_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stackelberg {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError("field '" + field + "': expected a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) {
    throw InputError("field '" + field + "': non-finite value");
  }
  return value;
}

const json& require(const json& j, const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) throw InputError("missing field '" + field + "'");
  return *it;
}

int integer_at(const json& j, const std::string& field) {
  const json& value = require(j, field);
  if (!value.is_number_integer()) {
    throw InputError("field '" + field + "': expected an integer");
  }
  return value.get<int>();
}

}  // namespace

Mat matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError("field '" + field + "': expected array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Mat(0, 0);
  if (!j[0].is_array()) {
    throw InputError("field '" + field + "': row 0 is not an array");
  }
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string where = field + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw InputError("field '" + where + "': expected array");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError("field '" + where + "': ragged row");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = number_at(row[c], where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Vec vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError("field '" + field + "': expected array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        number_at(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

GameSpec game_spec_from_json(const json& j) {
  if (!j.is_object()) throw InputError("game spec must be a JSON object");
  GameSpec spec;
  const int n = integer_at(j, "n");
  const int m1 = integer_at(j, "m1");
  const int m2 = integer_at(j, "m2");
  spec.N = integer_at(j, "N");
  spec.t = integer_at(j, "t");
  spec.x = vector_from_json(require(j, "x"), "x");

  struct Field {
    const char* name;
    Mat GameSpec::*member;
  };
  static constexpr Field kFields[] = {
      {"A", &GameSpec::A},   {"B1", &GameSpec::B1}, {"B2", &GameSpec::B2},
      {"Q1", &GameSpec::Q1}, {"Q2", &GameSpec::Q2}, {"R1", &GameSpec::R1},
      {"R2", &GameSpec::R2}, {"W1", &GameSpec::W1}, {"W2", &GameSpec::W2},
      {"G1", &GameSpec::G1}, {"G2", &GameSpec::G2},
  };
  for (const auto& f : kFields) {
    spec.*(f.member) = matrix_from_json(require(j, f.name), f.name);
  }
  // n/m1/m2 are declared separately from the matrices; disagreement is an
  // input error, not a validation finding, unless the matrices agree among
  // themselves.
  if (n < 1 || m1 < 1 || m2 < 1) throw InputError("n, m1, m2 must be positive");
  if (spec.A.rows() != n || spec.A.cols() != n) {
    throw InputError("field 'A': expected " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
  if (spec.B1.cols() != m1) {
    throw InputError("field 'B1': expected " + std::to_string(m1) + " columns");
  }
  if (spec.B2.cols() != m2) {
    throw InputError("field 'B2': expected " + std::to_string(m2) + " columns");
  }
  return spec;
}

GameSpec parse_game_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  return game_spec_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GameSpec load_game_spec(const std::string& path) {
  try {
    return parse_game_spec(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json game_spec_to_json(const GameSpec& spec) {
  json j;
  j["n"] = spec.n();
  j["m1"] = spec.m1();
  j["m2"] = spec.m2();
  j["N"] = spec.N;
  j["t"] = spec.t;
  j["x"] = vector_to_json(spec.x);
  j["A"] = matrix_to_json(spec.A);
  j["B1"] = matrix_to_json(spec.B1);
  j["B2"] = matrix_to_json(spec.B2);
  j["Q1"] = matrix_to_json(spec.Q1);
  j["Q2"] = matrix_to_json(spec.Q2);
  j["R1"] = matrix_to_json(spec.R1);
  j["R2"] = matrix_to_json(spec.R2);
  j["W1"] = matrix_to_json(spec.W1);
  j["W2"] = matrix_to_json(spec.W2);
  j["G1"] = matrix_to_json(spec.G1);
  j["G2"] = matrix_to_json(spec.G2);
  return j;
}

}  // namespace stackelberg
