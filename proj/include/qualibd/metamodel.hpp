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

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

namespace qualibd {

/// Element kinds of the language. The order is significant: it is the
/// declaration order used by the canonical text form.
enum class NodeKind {
  Goal,
  NfrSoftgoal,
  BigDataCharacteristic,
  Permutation,
  PermutationAttribute,
  OperationalizingSoftgoal,
  ClaimSoftgoal,
};

/// Refinement kinds. Every refinement is an element-based edge with its own id.
enum class EdgeKind {
  AssociationLink,
  PermutationLink,
  DecompositionLink,
  ContributionLink,
  ArgumentationLink,
};

enum class AttributeValueKind { Quantitative, Qualitative };

inline constexpr std::array kAllNodeKinds{
    NodeKind::Goal,
    NodeKind::NfrSoftgoal,
    NodeKind::BigDataCharacteristic,
    NodeKind::Permutation,
    NodeKind::PermutationAttribute,
    NodeKind::OperationalizingSoftgoal,
    NodeKind::ClaimSoftgoal,
};

inline constexpr std::array kAllEdgeKinds{
    EdgeKind::AssociationLink,
    EdgeKind::PermutationLink,
    EdgeKind::DecompositionLink,
    EdgeKind::ContributionLink,
    EdgeKind::ArgumentationLink,
};

inline constexpr std::array kAllAttributeValueKinds{
    AttributeValueKind::Quantitative,
    AttributeValueKind::Qualitative,
};

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;
std::string_view to_string(AttributeValueKind kind) noexcept;

std::optional<NodeKind> parse_node_kind(std::string_view name) noexcept;
std::optional<EdgeKind> parse_edge_kind(std::string_view name) noexcept;
std::optional<AttributeValueKind> parse_attribute_value_kind(std::string_view name) noexcept;

struct EndpointRule {
  EdgeKind edge_kind;
  NodeKind from_kind;
  NodeKind to_kind;

  friend constexpr bool operator==(const EndpointRule&, const EndpointRule&) = default;
};

/// The complete table of legal (edge, source, target) combinations.
/// PermutationAttribute never appears: attributes attach by containment.
std::span<const EndpointRule> endpoint_rules() noexcept;

bool endpoint_allowed(EdgeKind edge_kind, NodeKind from_kind, NodeKind to_kind) noexcept;

enum class Shape { Cloud, RoundedBox, Box, Diamond, Note };
enum class LineStyle { Solid, Dashed };
enum class LabelPlacement { Inside, Below };

std::string_view to_string(Shape shape) noexcept;
std::string_view to_string(LineStyle line) noexcept;
std::string_view to_string(LabelPlacement placement) noexcept;

using AnyKind = std::variant<NodeKind, EdgeKind>;

struct StyleSpec {
  AnyKind kind;
  std::optional<Shape> shape;  // node kinds only
  std::string_view fill;       // "#rrggbb"
  std::string_view stroke;     // "#rrggbb"
  LineStyle line;
  LabelPlacement label_placement;
};

StyleSpec style_for(NodeKind kind) noexcept;
StyleSpec style_for(EdgeKind kind) noexcept;
inline StyleSpec style_for(AnyKind kind) noexcept {
  return std::visit([](auto k) { return style_for(k); }, kind);
}

/// Position of a kind in the canonical declaration order.
constexpr int declaration_rank(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Goal: return 0;
    case NodeKind::BigDataCharacteristic: return 1;
    case NodeKind::NfrSoftgoal: return 2;
    case NodeKind::Permutation: return 3;
    case NodeKind::OperationalizingSoftgoal: return 4;
    case NodeKind::ClaimSoftgoal: return 5;
    case NodeKind::PermutationAttribute: return 6;
  }
  return 7;
}

}  // namespace qualibd
