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
#include <variant>
#include <vector>

#include "qualibd/model.hpp"

namespace qualibd {

struct CreateNode {
  NodeKind kind = NodeKind::Goal;
  std::optional<std::string> name;
  std::optional<NodeId> owner;
  std::optional<AttributeValueKind> attr_value_kind;  // defaults to Qualitative for attributes
  std::optional<std::string> attr_value;
};

struct CreateEdge {
  EdgeKind kind = EdgeKind::AssociationLink;
  NodeId from;
  NodeId to;
  std::optional<std::string> label;
};

/// Direct label edit. Nodes get their name replaced, contribution links their label.
struct SetLabel {
  ElementId target;
  std::string text;
};

enum class EdgeEnd { Source, Target };

struct ReconnectEdge {
  EdgeId edge;
  EdgeEnd end = EdgeEnd::Target;
  NodeId node;
};

struct DeleteElement {
  ElementId target;
};

struct AddPermutationAttribute {
  NodeId permutation;
  std::optional<std::string> name;
  AttributeValueKind value_kind = AttributeValueKind::Qualitative;
  std::optional<std::string> value;
};

/// Moves or resizes a node box on the canvas.
struct SetGeometry {
  NodeId node;
  Box box;
};

struct Undo {};
struct Redo {};

using EditCommand = std::variant<CreateNode, CreateEdge, SetLabel, ReconnectEdge, DeleteElement,
                                 AddPermutationAttribute, SetGeometry, Undo, Redo>;

enum class OutcomeStatus { Applied, Cancelled, Rejected };

enum class Reason {
  None,
  DuplicateEdge,
  IncompatibleEndpoints,
  SelfLoop,
  UnknownNode,
  UnknownElement,
  OwnerRequired,
  OwnerNotPermutation,
  OwnerNotAllowed,
  AttributeFieldsNotAllowed,
  LabelNotSupported,
  InvalidGeometry,
  NothingToUndo,
  NothingToRedo,
};

std::string_view to_string(OutcomeStatus status) noexcept;
std::string_view to_string(Reason reason) noexcept;

struct EditOutcome {
  OutcomeStatus status = OutcomeStatus::Applied;
  Reason reason = Reason::None;
  std::vector<ElementId> created;
  std::uint64_t revision = 0;

  bool applied() const noexcept { return status == OutcomeStatus::Applied; }
  bool cancelled() const noexcept { return status == OutcomeStatus::Cancelled; }
  bool rejected() const noexcept { return status == OutcomeStatus::Rejected; }
};

/// Default box size for newly created top-level nodes.
inline constexpr double kDefaultNodeWidth = 150;
inline constexpr double kDefaultNodeHeight = 60;

/// Grid slot `n` for new top-level nodes: five columns, 180 x 120 pitch.
Box default_slot(std::size_t n) noexcept;

/// Box for the `index`-th attribute nested in an owner box.
Box attribute_slot(const Box& owner, std::size_t index) noexcept;

/// Minimum owner height that keeps `count` attribute boxes strictly inside.
double owner_height_for(std::size_t count) noexcept;

/// A model plus its edit journal. All mutations go through `apply`, which
/// keeps the model invariants: live endpoints, legal endpoint kinds, no
/// self-loops, at most one edge per ordered node pair, attribute containment.
///
/// Single writer. A Document may be moved between threads but must not be
/// mutated concurrently; `model()` hands out a reference that stays valid
/// until the next `apply`.
class Document {
 public:
  Document() = default;
  explicit Document(Model model) : model_(std::move(model)) {}

  const Model& model() const noexcept { return model_; }

  EditOutcome apply(const EditCommand& command);

  bool can_undo() const noexcept { return !undo_.empty(); }
  bool can_redo() const noexcept { return !redo_.empty(); }
  std::size_t journal_size() const noexcept { return undo_.size(); }

  /// Drops the journal without touching the model.
  void clear_history() noexcept;

 private:
  template <typename Key, typename Value>
  struct Change {
    Key key;
    std::optional<Value> before;
    std::optional<Value> after;
  };

  struct Patch {
    std::vector<Change<NodeId, Node>> nodes;
    std::vector<Change<EdgeId, Edge>> edges;
    std::vector<Change<NodeId, Box>> geometry;
    std::vector<ElementId> created;
  };

  EditOutcome apply_impl(const CreateNode& cmd);
  EditOutcome apply_impl(const CreateEdge& cmd);
  EditOutcome apply_impl(const SetLabel& cmd);
  EditOutcome apply_impl(const ReconnectEdge& cmd);
  EditOutcome apply_impl(const DeleteElement& cmd);
  EditOutcome apply_impl(const AddPermutationAttribute& cmd);
  EditOutcome apply_impl(const SetGeometry& cmd);
  EditOutcome apply_impl(const Undo& cmd);
  EditOutcome apply_impl(const Redo& cmd);

  EditOutcome commit(Patch patch);
  EditOutcome refuse(OutcomeStatus status, Reason reason) const;
  void write(const Patch& patch, bool forward);

  std::optional<Reason> check_connection(EdgeKind kind, NodeId from, NodeId to,
                                         std::optional<EdgeId> ignore) const;
  Box free_slot() const;

  Model model_;
  std::vector<Patch> undo_;
  std::vector<Patch> redo_;
};

}  // namespace qualibd
