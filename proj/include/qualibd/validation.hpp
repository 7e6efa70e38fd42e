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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qualibd/model.hpp"

namespace qualibd {

/// Ordered: Message < Warning < Error.
enum class Severity { Message, Warning, Error };

std::string_view to_string(Severity severity) noexcept;  // "message" | "warning" | "error"
std::optional<Severity> parse_severity(std::string_view text) noexcept;

namespace rules {
inline constexpr std::string_view kEmptyLabel = "empty-label";
inline constexpr std::string_view kEmptyConnections = "empty-connections";
inline constexpr std::string_view kIncompletePermutation = "incomplete-permutation";
inline constexpr std::string_view kDuplicateEdge = "duplicate-edge";
inline constexpr std::string_view kIncompatibleEndpoints = "incompatible-endpoints";
inline constexpr std::string_view kDanglingReference = "dangling-reference";
inline constexpr std::string_view kSelfLoop = "self-loop";
inline constexpr std::string_view kInvalidContainment = "invalid-containment";
inline constexpr std::string_view kLabelNotSupported = "label-not-supported";
}  // namespace rules

struct Diagnostic {
  std::string rule_id;
  Severity severity = Severity::Warning;
  TargetId target;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Warning per node whose name is absent or whitespace only.
std::vector<Diagnostic> rule_empty_label(const Model& model);

/// Warning per non-attribute node with no incident edge in either direction.
std::vector<Diagnostic> rule_empty_connections(const Model& model);

/// Errors for anything the edit engine would have refused: dangling
/// references, duplicate (from, to) pairs, illegal endpoint kinds, self-loops,
/// broken attribute containment, labels on non-contribution links.
std::vector<Diagnostic> rule_structural(const Model& model);

/// Warning per Permutation missing an incoming PermutationLink from a Big Data
/// characteristic or from an NFR softgoal.
std::vector<Diagnostic> rule_permutation_completeness(const Model& model);

/// All rules, sorted by (severity descending, rule id, target).
std::vector<Diagnostic> validate(const Model& model);

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

/// One line per diagnostic: "warning[empty-label] n3: ...".
std::string render_human(const Diagnostic& diagnostic);

}  // namespace qualibd
