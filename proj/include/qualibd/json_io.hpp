// Copyright 2026 The QualiBD Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qualibd/document.hpp"
#include "qualibd/model.hpp"
#include "qualibd/validation.hpp"

namespace qualibd {

inline constexpr int kFormatVersion = 1;

/// Document loading failure. `path()` is a JSON pointer to the offending
/// value, empty for syntax errors.
class DocumentError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Schema, Version, Structure };

  DocumentError(Kind kind, std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        kind_(kind),
        path_(std::move(path)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

  /// Structural diagnostics for Kind::Structure.
  std::vector<Diagnostic> diagnostics;

 private:
  Kind kind_;
  std::string path_;
};

nlohmann::ordered_json model_to_json(const Model& model);
std::string to_json(const Model& model);

enum class Strictness {
  Strict,   ///< refuse documents with structural errors
  Lenient,  ///< schema checks only, structure left to the validator
};

Model model_from_json(const nlohmann::json& document, Strictness strictness = Strictness::Strict);
Model from_json(std::string_view text, Strictness strictness = Strictness::Strict);

nlohmann::ordered_json diagnostic_to_json(const Diagnostic& diagnostic);
nlohmann::ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

/// Wire form of edit commands: `{"type": "CreateNode", ...}`. Throws
/// DocumentError(Schema) on malformed input.
EditCommand command_from_json(const nlohmann::json& command);
nlohmann::ordered_json command_to_json(const EditCommand& command);

nlohmann::ordered_json outcome_to_json(const EditOutcome& outcome);

}  // namespace qualibd
