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

#include "qualibd/document.hpp"

#include <algorithm>
#include <cmath>

namespace qualibd {

namespace {

constexpr double kAttributeInset = 8;
constexpr double kAttributeTop = 28;
constexpr double kAttributeHeight = 20;
constexpr double kAttributePitch = 24;

template <typename Map, typename Key, typename Value>
void put(Map& map, const Key& key, const std::optional<Value>& value) {
  if (value) {
    map.insert_or_assign(key, *value);
  } else {
    map.erase(key);
  }
}

template <typename Map, typename Key>
auto lookup(const Map& map, const Key& key) -> std::optional<typename Map::mapped_type> {
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string_view to_string(OutcomeStatus status) noexcept {
  switch (status) {
    case OutcomeStatus::Applied: return "applied";
    case OutcomeStatus::Cancelled: return "cancelled";
    case OutcomeStatus::Rejected: return "rejected";
  }
  return "?";
}

std::string_view to_string(Reason reason) noexcept {
  switch (reason) {
    case Reason::None: return "";
    case Reason::DuplicateEdge: return "duplicate-edge";
    case Reason::IncompatibleEndpoints: return "incompatible-endpoints";
    case Reason::SelfLoop: return "self-loop";
    case Reason::UnknownNode: return "unknown-node";
    case Reason::UnknownElement: return "unknown-element";
    case Reason::OwnerRequired: return "owner-required";
    case Reason::OwnerNotPermutation: return "owner-not-permutation";
    case Reason::OwnerNotAllowed: return "owner-not-allowed";
    case Reason::AttributeFieldsNotAllowed: return "attribute-fields-not-allowed";
    case Reason::LabelNotSupported: return "label-not-supported";
    case Reason::InvalidGeometry: return "invalid-geometry";
    case Reason::NothingToUndo: return "nothing-to-undo";
    case Reason::NothingToRedo: return "nothing-to-redo";
  }
  return "?";
}

Box default_slot(std::size_t n) noexcept {
  return Box{40.0 + 180.0 * static_cast<double>(n % 5), 40.0 + 120.0 * static_cast<double>(n / 5),
             kDefaultNodeWidth, kDefaultNodeHeight};
}

Box attribute_slot(const Box& owner, std::size_t index) noexcept {
  return Box{owner.x + kAttributeInset,
             owner.y + kAttributeTop + kAttributePitch * static_cast<double>(index),
             owner.w - 2 * kAttributeInset, kAttributeHeight};
}

double owner_height_for(std::size_t count) noexcept {
  const double needed =
      kAttributeTop + kAttributePitch * static_cast<double>(count) + kAttributeInset;
  return std::max(kDefaultNodeHeight, needed);
}

void Document::clear_history() noexcept {
  undo_.clear();
  redo_.clear();
}

EditOutcome Document::apply(const EditCommand& command) {
  return std::visit([this](const auto& cmd) { return apply_impl(cmd); }, command);
}

EditOutcome Document::refuse(OutcomeStatus status, Reason reason) const {
  return EditOutcome{status, reason, {}, model_.revision};
}

void Document::write(const Patch& patch, bool forward) {
  for (const auto& c : patch.nodes) put(model_.nodes, c.key, forward ? c.after : c.before);
  for (const auto& c : patch.edges) put(model_.edges, c.key, forward ? c.after : c.before);
  for (const auto& c : patch.geometry) put(model_.geometry, c.key, forward ? c.after : c.before);
}

EditOutcome Document::commit(Patch patch) {
  write(patch, true);
  ++model_.revision;
  EditOutcome outcome{OutcomeStatus::Applied, Reason::None, patch.created, model_.revision};
  undo_.push_back(std::move(patch));
  redo_.clear();
  return outcome;
}

// Order matters: an existing from->to connection of any kind cancels the
// attempt before kind compatibility is even looked at.
std::optional<Reason> Document::check_connection(EdgeKind kind, NodeId from, NodeId to,
                                                 std::optional<EdgeId> ignore) const {
  const Node* source = model_.find_node(from);
  const Node* target = model_.find_node(to);
  if (source == nullptr || target == nullptr) return Reason::UnknownNode;
  for (const auto& [eid, edge] : model_.edges) {
    if (eid != ignore && edge.from == from && edge.to == to) return Reason::DuplicateEdge;
  }
  if (!endpoint_allowed(kind, source->kind, target->kind)) return Reason::IncompatibleEndpoints;
  if (from == to) return Reason::SelfLoop;
  return std::nullopt;
}

Box Document::free_slot() const {
  for (std::size_t n = 0;; ++n) {
    const Box slot = default_slot(n);
    const bool taken = std::ranges::any_of(model_.geometry, [&](const auto& entry) {
      const Node* node = model_.find_node(entry.first);
      return node != nullptr && node->kind != NodeKind::PermutationAttribute &&
             overlaps(slot, entry.second);
    });
    if (!taken) return slot;
  }
}

EditOutcome Document::apply_impl(const CreateNode& cmd) {
  const bool is_attribute = cmd.kind == NodeKind::PermutationAttribute;
  if (!is_attribute) {
    if (cmd.owner) return refuse(OutcomeStatus::Rejected, Reason::OwnerNotAllowed);
    if (cmd.attr_value_kind || cmd.attr_value) {
      return refuse(OutcomeStatus::Rejected, Reason::AttributeFieldsNotAllowed);
    }
  } else {
    if (!cmd.owner) return refuse(OutcomeStatus::Rejected, Reason::OwnerRequired);
    const Node* owner = model_.find_node(*cmd.owner);
    if (owner == nullptr) return refuse(OutcomeStatus::Rejected, Reason::UnknownNode);
    if (owner->kind != NodeKind::Permutation) {
      return refuse(OutcomeStatus::Rejected, Reason::OwnerNotPermutation);
    }
  }

  const NodeId id{model_.next_id++};
  Node node{id, cmd.kind, cmd.name, std::nullopt, std::nullopt, std::nullopt};
  if (is_attribute) {
    node.owner = cmd.owner;
    node.attr_value_kind = cmd.attr_value_kind.value_or(AttributeValueKind::Qualitative);
    node.attr_value = cmd.attr_value;
  }

  Patch patch;
  patch.nodes.push_back({id, std::nullopt, node});
  patch.created.emplace_back(id);

  if (!is_attribute) {
    patch.geometry.push_back({id, std::nullopt, free_slot()});
  } else if (auto owner_box = lookup(model_.geometry, *cmd.owner)) {
    const std::size_t index = model_.attributes_of(*cmd.owner).size();
    Box grown = *owner_box;
    grown.h = std::max(grown.h, owner_height_for(index + 1));
    if (grown != *owner_box) patch.geometry.push_back({*cmd.owner, owner_box, grown});
    patch.geometry.push_back({id, std::nullopt, attribute_slot(grown, index)});
  }
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const AddPermutationAttribute& cmd) {
  return apply_impl(CreateNode{NodeKind::PermutationAttribute, cmd.name, cmd.permutation,
                               cmd.value_kind, cmd.value});
}

EditOutcome Document::apply_impl(const CreateEdge& cmd) {
  if (auto reason = check_connection(cmd.kind, cmd.from, cmd.to, std::nullopt)) {
    const auto status =
        *reason == Reason::DuplicateEdge ? OutcomeStatus::Cancelled : OutcomeStatus::Rejected;
    return refuse(status, *reason);
  }
  if (cmd.label && cmd.kind != EdgeKind::ContributionLink) {
    return refuse(OutcomeStatus::Rejected, Reason::LabelNotSupported);
  }
  const EdgeId id{model_.next_id++};
  Patch patch;
  patch.edges.push_back({id, std::nullopt, Edge{id, cmd.kind, cmd.from, cmd.to, cmd.label}});
  patch.created.emplace_back(id);
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const SetLabel& cmd) {
  Patch patch;
  if (const auto* nid = std::get_if<NodeId>(&cmd.target)) {
    const Node* node = model_.find_node(*nid);
    if (node == nullptr) return refuse(OutcomeStatus::Rejected, Reason::UnknownElement);
    Node renamed = *node;
    renamed.name = cmd.text;
    patch.nodes.push_back({*nid, *node, renamed});
  } else {
    const EdgeId eid = std::get<EdgeId>(cmd.target);
    const Edge* edge = model_.find_edge(eid);
    if (edge == nullptr) return refuse(OutcomeStatus::Rejected, Reason::UnknownElement);
    if (edge->kind != EdgeKind::ContributionLink) {
      return refuse(OutcomeStatus::Rejected, Reason::LabelNotSupported);
    }
    Edge relabeled = *edge;
    relabeled.label = cmd.text;
    patch.edges.push_back({eid, *edge, relabeled});
  }
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const ReconnectEdge& cmd) {
  const Edge* edge = model_.find_edge(cmd.edge);
  if (edge == nullptr || !model_.nodes.contains(cmd.node)) {
    return refuse(OutcomeStatus::Rejected, Reason::UnknownElement);
  }
  Edge moved = *edge;
  (cmd.end == EdgeEnd::Source ? moved.from : moved.to) = cmd.node;
  if (auto reason = check_connection(moved.kind, moved.from, moved.to, moved.id)) {
    const auto status =
        *reason == Reason::DuplicateEdge ? OutcomeStatus::Cancelled : OutcomeStatus::Rejected;
    return refuse(status, *reason);
  }
  Patch patch;
  patch.edges.push_back({moved.id, *edge, moved});
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const DeleteElement& cmd) {
  if (!model_.contains(cmd.target)) return refuse(OutcomeStatus::Rejected, Reason::UnknownElement);

  Patch patch;
  if (const auto* eid = std::get_if<EdgeId>(&cmd.target)) {
    patch.edges.push_back({*eid, model_.edges.at(*eid), std::nullopt});
    return commit(std::move(patch));
  }

  const NodeId root = std::get<NodeId>(cmd.target);
  std::vector<NodeId> doomed{root};
  for (NodeId attr : model_.attributes_of(root)) doomed.push_back(attr);

  std::vector<EdgeId> edges;
  for (NodeId nid : doomed) {
    patch.nodes.push_back({nid, model_.nodes.at(nid), std::nullopt});
    if (auto box = lookup(model_.geometry, nid)) patch.geometry.push_back({nid, box, std::nullopt});
    for (EdgeId eid : model_.incident_edges(nid)) edges.push_back(eid);
  }
  std::ranges::sort(edges);
  const auto [first, last] = std::ranges::unique(edges);
  edges.erase(first, last);
  for (EdgeId eid : edges) patch.edges.push_back({eid, model_.edges.at(eid), std::nullopt});
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const SetGeometry& cmd) {
  if (!model_.nodes.contains(cmd.node)) return refuse(OutcomeStatus::Rejected, Reason::UnknownNode);
  const Box& b = cmd.box;
  if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) || !std::isfinite(b.h) ||
      b.w <= 0 || b.h <= 0) {
    return refuse(OutcomeStatus::Rejected, Reason::InvalidGeometry);
  }
  Patch patch;
  patch.geometry.push_back({cmd.node, lookup(model_.geometry, cmd.node), b});
  return commit(std::move(patch));
}

EditOutcome Document::apply_impl(const Undo&) {
  if (undo_.empty()) return refuse(OutcomeStatus::Rejected, Reason::NothingToUndo);
  Patch patch = std::move(undo_.back());
  undo_.pop_back();
  write(patch, false);
  ++model_.revision;
  redo_.push_back(std::move(patch));
  return EditOutcome{OutcomeStatus::Applied, Reason::None, {}, model_.revision};
}

EditOutcome Document::apply_impl(const Redo&) {
  if (redo_.empty()) return refuse(OutcomeStatus::Rejected, Reason::NothingToRedo);
  Patch patch = std::move(redo_.back());
  redo_.pop_back();
  write(patch, true);
  ++model_.revision;
  EditOutcome outcome{OutcomeStatus::Applied, Reason::None, patch.created, model_.revision};
  undo_.push_back(std::move(patch));
  return outcome;
}

}  // namespace qualibd
