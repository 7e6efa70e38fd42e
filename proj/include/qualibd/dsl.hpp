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

/**
 * @file dsl.hpp
 * @brief Textual `.qbd` form of a model.
 *
 * Grammar (`#` starts a line comment, `;` is an optional statement terminator):
 *
 *     model      := "model" STRING "{" statement* "}"
 *     statement  := node | link | ";"
 *     node       := ("goal" | "softgoal" | "characteristic" | "opgoal" | "claim") IDENT [STRING]
 *                 | "permutation" IDENT [STRING] ["{" attribute* "}"]
 *     attribute  := "attribute" ("quantitative" | "qualitative") [STRING] ["=" STRING] [";"]
 *     link       := ("associate" | "permute" | "decompose" | "contribute" | "argue")
 *                   IDENT "->" IDENT ["label" STRING]
 *
 * Identifiers must be declared before use. Links go through the same checks
 * as the edit engine, so a duplicate connection or an illegal endpoint pair
 * is reported as an error at the offending statement. The text form carries
 * no geometry.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qualibd/model.hpp"

namespace qualibd {

/// 1-based line and column, length in bytes.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError {
  SourceSpan span;
  std::vector<std::string> expected;
  std::string found;
  std::string detail;  // set for semantic errors ("unknown identifier V")

  /// "line:col: expected X, found Y" or "line:col: <detail>".
  std::string message() const;
};

struct ParseOptions {
  /// First id handed out; lets a caller keep ids unique within an existing model.
  std::uint64_t first_id = 1;
};

class ParseResult {
 public:
  explicit ParseResult(Model model) : value_(std::move(model)) {}
  explicit ParseResult(std::vector<ParseError> errors) : value_(std::move(errors)) {}

  bool ok() const noexcept { return std::holds_alternative<Model>(value_); }
  explicit operator bool() const noexcept { return ok(); }

  const Model& model() const { return std::get<Model>(value_); }
  Model& model() { return std::get<Model>(value_); }
  const std::vector<ParseError>& errors() const { return std::get<std::vector<ParseError>>(value_); }

 private:
  std::variant<Model, std::vector<ParseError>> value_;
};

ParseResult parse_dsl(std::string_view text, const ParseOptions& options = {});

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text. Throws FormatError when the model has structural errors.
std::string format_dsl(const Model& model);

/// Source keyword for a node kind ("goal", "softgoal", ...). Attributes have none.
std::string_view dsl_keyword(NodeKind kind) noexcept;
std::string_view dsl_keyword(EdgeKind kind) noexcept;

}  // namespace qualibd
