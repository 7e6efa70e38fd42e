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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qualibd/metamodel.hpp"

namespace qualibd {

/// Opaque element id. Nodes and edges of one model draw from the same
/// monotone counter; the tag only keeps the two id spaces apart in the type
/// system. Text form is "n<k>" / "e<k>".
template <typename Tag>
struct Id {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

struct NodeTag {};
struct EdgeTag {};
using NodeId = Id<NodeTag>;
using EdgeId = Id<EdgeTag>;

/// Models are identified by a file-name safe token.
struct ModelId {
  std::string value;

  friend auto operator<=>(const ModelId&, const ModelId&) = default;
};

using ElementId = std::variant<NodeId, EdgeId>;
using TargetId = std::variant<ModelId, NodeId, EdgeId>;

std::string to_string(NodeId id);
std::string to_string(EdgeId id);
std::string to_string(const ElementId& id);
std::string to_string(const TargetId& id);

std::optional<NodeId> parse_node_id(std::string_view text) noexcept;
std::optional<EdgeId> parse_edge_id(std::string_view text) noexcept;
std::optional<ElementId> parse_element_id(std::string_view text) noexcept;

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Goal;
  std::optional<std::string> name;
  std::optional<NodeId> owner;                       // PermutationAttribute only
  std::optional<AttributeValueKind> attr_value_kind;  // PermutationAttribute only
  std::optional<std::string> attr_value;              // PermutationAttribute only

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  EdgeId id;
  EdgeKind kind = EdgeKind::AssociationLink;
  NodeId from;
  NodeId to;
  std::optional<std::string> label;  // ContributionLink only

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Axis-aligned box in diagram pixels.
struct Box {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  friend bool operator==(const Box&, const Box&) = default;
};

/// True when the interiors of the two boxes intersect; touching edges do not count.
bool overlaps(const Box& a, const Box& b) noexcept;
/// True when `inner` lies strictly inside `outer`.
bool strictly_contains(const Box& outer, const Box& inner) noexcept;

/// A QualiBD model document. Plain value type: the edit engine in
/// document.hpp owns the invariants, loaders may produce anything and rely on
/// the structural rules in validation.hpp to find out what is wrong.
struct Model {
  ModelId id;
  std::string name;
  std::map<NodeId, Node> nodes;
  std::map<EdgeId, Edge> edges;
  std::map<NodeId, Box> geometry;
  std::uint64_t revision = 0;
  std::uint64_t next_id = 1;

  const Node* find_node(NodeId id) const;
  const Edge* find_edge(EdgeId id) const;
  bool contains(const ElementId& id) const;
  bool contains(const TargetId& id) const;

  /// Attributes owned by `permutation`, in id order.
  std::vector<NodeId> attributes_of(NodeId permutation) const;
  /// Edges with `node` at either end, in id order.
  std::vector<EdgeId> incident_edges(NodeId node) const;
  /// Edge from `from` to `to` of any kind, if one exists.
  std::optional<EdgeId> find_connection(NodeId from, NodeId to) const;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Equality of everything a user can see: id, name, nodes, edges and
/// geometry. Revision and the id counter are bookkeeping and excluded.
bool content_equal(const Model& a, const Model& b);

/// Order-sensitive FNV-1a digest of the full model value, revision included.
std::uint64_t model_hash(const Model& model);

/// Lowercase alphanumeric/dash token derived from `name`; "model" if empty.
std::string slugify(std::string_view name);

}  // namespace qualibd
