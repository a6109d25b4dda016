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

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stackelberg/game_model.hpp"

namespace stackelberg {

/// Malformed or unreadable input; the message names the file, field or
/// line involved.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a game spec object. Fields: n, m1, m2, N, t, x, A, B1, B2, Q1, Q2,
/// R1, R2, W1, W2, G1, G2; matrices are arrays of row arrays. Shape
/// agreement with n/m1/m2 is left to validate().
GameSpec game_spec_from_json(const nlohmann::json& j);
GameSpec parse_game_spec(const std::string& text);
GameSpec load_game_spec(const std::string& path);

nlohmann::json game_spec_to_json(const GameSpec& spec);

nlohmann::json matrix_to_json(const Mat& m);
nlohmann::json vector_to_json(const Vec& v);
Mat matrix_from_json(const nlohmann::json& j, const std::string& field);
Vec vector_from_json(const nlohmann::json& j, const std::string& field);

std::string read_file(const std::string& path);

}  // namespace stackelberg
