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

#include "qualibd/metamodel.hpp"

#include <algorithm>

namespace qualibd {

namespace {

using enum NodeKind;
using enum EdgeKind;

// Concept flow: goal -> characteristic / quality softgoal -> permutation
// -> operationalization -> claim.
constexpr std::array kEndpointRules{
    EndpointRule{AssociationLink, Goal, BigDataCharacteristic},
    EndpointRule{AssociationLink, Goal, NfrSoftgoal},
    EndpointRule{PermutationLink, BigDataCharacteristic, Permutation},
    EndpointRule{PermutationLink, NfrSoftgoal, Permutation},
    EndpointRule{DecompositionLink, Goal, Goal},
    EndpointRule{DecompositionLink, NfrSoftgoal, NfrSoftgoal},
    EndpointRule{DecompositionLink, OperationalizingSoftgoal, OperationalizingSoftgoal},
    EndpointRule{DecompositionLink, Permutation, Permutation},
    EndpointRule{ContributionLink, OperationalizingSoftgoal, Permutation},
    EndpointRule{ContributionLink, OperationalizingSoftgoal, NfrSoftgoal},
    EndpointRule{ContributionLink, OperationalizingSoftgoal, Goal},
    EndpointRule{ArgumentationLink, ClaimSoftgoal, OperationalizingSoftgoal},
};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view name, const std::array<Enum, N>& all) {
  for (Enum e : all) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case Goal: return "Goal";
    case NfrSoftgoal: return "NfrSoftgoal";
    case BigDataCharacteristic: return "BigDataCharacteristic";
    case Permutation: return "Permutation";
    case PermutationAttribute: return "PermutationAttribute";
    case OperationalizingSoftgoal: return "OperationalizingSoftgoal";
    case ClaimSoftgoal: return "ClaimSoftgoal";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case AssociationLink: return "AssociationLink";
    case PermutationLink: return "PermutationLink";
    case DecompositionLink: return "DecompositionLink";
    case ContributionLink: return "ContributionLink";
    case ArgumentationLink: return "ArgumentationLink";
  }
  return "?";
}

std::string_view to_string(AttributeValueKind kind) noexcept {
  switch (kind) {
    case AttributeValueKind::Quantitative: return "Quantitative";
    case AttributeValueKind::Qualitative: return "Qualitative";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) noexcept {
  return parse_enum(name, kAllNodeKinds);
}

std::optional<EdgeKind> parse_edge_kind(std::string_view name) noexcept {
  return parse_enum(name, kAllEdgeKinds);
}

std::optional<AttributeValueKind> parse_attribute_value_kind(std::string_view name) noexcept {
  return parse_enum(name, kAllAttributeValueKinds);
}

std::span<const EndpointRule> endpoint_rules() noexcept { return kEndpointRules; }

bool endpoint_allowed(EdgeKind edge_kind, NodeKind from_kind, NodeKind to_kind) noexcept {
  const EndpointRule probe{edge_kind, from_kind, to_kind};
  return std::ranges::find(kEndpointRules, probe) != kEndpointRules.end();
}

std::string_view to_string(Shape shape) noexcept {
  switch (shape) {
    case Shape::Cloud: return "cloud";
    case Shape::RoundedBox: return "rounded-box";
    case Shape::Box: return "box";
    case Shape::Diamond: return "diamond";
    case Shape::Note: return "note";
  }
  return "?";
}

std::string_view to_string(LineStyle line) noexcept {
  return line == LineStyle::Dashed ? "dashed" : "solid";
}

std::string_view to_string(LabelPlacement placement) noexcept {
  return placement == LabelPlacement::Below ? "below" : "inside";
}

StyleSpec style_for(NodeKind kind) noexcept {
  using enum Shape;
  using enum LineStyle;
  using enum LabelPlacement;
  switch (kind) {
    case Goal: return {kind, RoundedBox, "#dae8fc", "#6c8ebf", Solid, Inside};
    case NfrSoftgoal: return {kind, Cloud, "#fff2cc", "#d6b656", Solid, Inside};
    case BigDataCharacteristic: return {kind, Diamond, "#f8cecc", "#b85450", Solid, Below};
    case Permutation: return {kind, Box, "#e1d5e7", "#9673a6", Solid, Inside};
    case PermutationAttribute: return {kind, Box, "#ffffff", "#9673a6", Solid, Inside};
    case OperationalizingSoftgoal: return {kind, Cloud, "#d5e8d4", "#82b366", Solid, Inside};
    case ClaimSoftgoal: return {kind, Note, "#f5f5f5", "#666666", Dashed, Inside};
  }
  return {kind, Box, "#ffffff", "#000000", Solid, Inside};
}

StyleSpec style_for(EdgeKind kind) noexcept {
  using enum LineStyle;
  using enum LabelPlacement;
  switch (kind) {
    case AssociationLink: return {kind, std::nullopt, "none", "#333333", Solid, Inside};
    case PermutationLink: return {kind, std::nullopt, "none", "#9673a6", Solid, Inside};
    case DecompositionLink: return {kind, std::nullopt, "none", "#333333", Solid, Inside};
    case ContributionLink: return {kind, std::nullopt, "none", "#82b366", Dashed, Inside};
    case ArgumentationLink: return {kind, std::nullopt, "none", "#666666", Dashed, Inside};
  }
  return {kind, std::nullopt, "none", "#000000", Solid, Inside};
}

}  // namespace qualibd
