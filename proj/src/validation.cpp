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

#include "qualibd/validation.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace qualibd {

namespace {

bool blank(const std::optional<std::string>& text) {
  if (!text) return true;
  return std::ranges::all_of(*text, [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

std::string describe(const Node& node) {
  std::string out{to_string(node.kind)};
  out += ' ';
  out += to_string(node.id);
  if (!blank(node.name)) {
    out += " \"";
    out += *node.name;
    out += '"';
  }
  return out;
}

std::string describe(const Edge& edge) {
  return std::string{to_string(edge.kind)} + ' ' + to_string(edge.id) + " (" +
         to_string(edge.from) + " -> " + to_string(edge.to) + ")";
}

Diagnostic make(std::string_view rule, Severity severity, TargetId target, std::string message) {
  return Diagnostic{std::string{rule}, severity, std::move(target), std::move(message)};
}

}  // namespace

std::string_view to_string(Severity severity) noexcept {
  switch (severity) {
    case Severity::Message: return "message";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

std::optional<Severity> parse_severity(std::string_view text) noexcept {
  for (Severity s : {Severity::Message, Severity::Warning, Severity::Error}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::vector<Diagnostic> rule_empty_label(const Model& model) {
  std::vector<Diagnostic> out;
  for (const auto& [id, node] : model.nodes) {
    if (blank(node.name)) {
      out.push_back(make(rules::kEmptyLabel, Severity::Warning, id,
                         describe(node) + " has an empty label"));
    }
  }
  return out;
}

std::vector<Diagnostic> rule_empty_connections(const Model& model) {
  std::set<NodeId> connected;
  for (const auto& [id, edge] : model.edges) {
    connected.insert(edge.from);
    connected.insert(edge.to);
  }
  std::vector<Diagnostic> out;
  for (const auto& [id, node] : model.nodes) {
    if (node.kind == NodeKind::PermutationAttribute || connected.contains(id)) continue;
    out.push_back(make(rules::kEmptyConnections, Severity::Warning, id,
                       describe(node) + " has no connections"));
  }
  return out;
}

std::vector<Diagnostic> rule_structural(const Model& model) {
  std::vector<Diagnostic> out;

  for (const auto& [id, node] : model.nodes) {
    const bool is_attribute = node.kind == NodeKind::PermutationAttribute;
    if (is_attribute && node.owner && !model.nodes.contains(*node.owner)) {
      out.push_back(make(rules::kDanglingReference, Severity::Error, id,
                         describe(node) + " is owned by missing node " + to_string(*node.owner)));
      continue;
    }
    std::string problem;
    if (is_attribute) {
      if (!node.owner) {
        problem = "has no owning permutation";
      } else if (model.nodes.at(*node.owner).kind != NodeKind::Permutation) {
        problem = "is owned by " + describe(model.nodes.at(*node.owner)) + ", not a Permutation";
      } else if (!node.attr_value_kind) {
        problem = "has no value kind";
      }
    } else if (node.owner) {
      problem = "has an owner but is not a PermutationAttribute";
    } else if (node.attr_value_kind || node.attr_value) {
      problem = "carries attribute fields but is not a PermutationAttribute";
    }
    if (!problem.empty()) {
      out.push_back(make(rules::kInvalidContainment, Severity::Error, id,
                         describe(node) + ' ' + problem));
    }
  }

  std::string orphan_boxes;
  for (const auto& [id, box] : model.geometry) {
    if (model.nodes.contains(id)) continue;
    orphan_boxes += orphan_boxes.empty() ? "" : ", ";
    orphan_boxes += to_string(id);
  }
  if (!orphan_boxes.empty()) {
    out.push_back(make(rules::kDanglingReference, Severity::Error, model.id,
                       "geometry entries for missing nodes: " + orphan_boxes));
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [id, edge] : model.edges) {
    const Node* from = model.find_node(edge.from);
    const Node* to = model.find_node(edge.to);
    if (from == nullptr || to == nullptr) {
      out.push_back(make(rules::kDanglingReference, Severity::Error, id,
                         describe(edge) + " references a missing node"));
      continue;
    }
    if (!seen.insert({edge.from, edge.to}).second) {
      out.push_back(make(rules::kDuplicateEdge, Severity::Error, id,
                         describe(edge) + " duplicates an existing connection"));
    }
    if (!endpoint_allowed(edge.kind, from->kind, to->kind)) {
      out.push_back(make(rules::kIncompatibleEndpoints, Severity::Error, id,
                         describe(edge) + " cannot connect " + std::string{to_string(from->kind)} +
                             " to " + std::string{to_string(to->kind)}));
    }
    if (edge.from == edge.to) {
      out.push_back(make(rules::kSelfLoop, Severity::Error, id, describe(edge) + " is a self-loop"));
    }
    if (edge.label && edge.kind != EdgeKind::ContributionLink) {
      out.push_back(make(rules::kLabelNotSupported, Severity::Error, id,
                         describe(edge) + " carries a label; only ContributionLink may"));
    }
  }
  return out;
}

std::vector<Diagnostic> rule_permutation_completeness(const Model& model) {
  std::set<NodeId> from_characteristic;
  std::set<NodeId> from_softgoal;
  for (const auto& [id, edge] : model.edges) {
    if (edge.kind != EdgeKind::PermutationLink) continue;
    const Node* source = model.find_node(edge.from);
    if (source == nullptr) continue;
    if (source->kind == NodeKind::BigDataCharacteristic) from_characteristic.insert(edge.to);
    if (source->kind == NodeKind::NfrSoftgoal) from_softgoal.insert(edge.to);
  }
  std::vector<Diagnostic> out;
  for (const auto& [id, node] : model.nodes) {
    if (node.kind != NodeKind::Permutation) continue;
    const bool has_characteristic = from_characteristic.contains(id);
    const bool has_softgoal = from_softgoal.contains(id);
    if (has_characteristic && has_softgoal) continue;
    std::string missing;
    if (!has_characteristic) missing = "a Big Data characteristic";
    if (!has_softgoal) missing += missing.empty() ? "an NFR softgoal" : " and an NFR softgoal";
    out.push_back(make(rules::kIncompletePermutation, Severity::Warning, id,
                       describe(node) + " lacks a permutation link from " + missing));
  }
  return out;
}

std::vector<Diagnostic> validate(const Model& model) {
  std::vector<Diagnostic> all;
  for (auto* rule : {&rule_structural, &rule_empty_label, &rule_empty_connections,
                     &rule_permutation_completeness}) {
    auto found = rule(model);
    all.insert(all.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  std::ranges::stable_sort(all, [](const Diagnostic& a, const Diagnostic& b) {
    if (a.severity != b.severity) return a.severity > b.severity;
    return std::tie(a.rule_id, a.target) < std::tie(b.rule_id, b.target);
  });
  return all;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
  return std::ranges::any_of(diagnostics,
                             [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string render_human(const Diagnostic& d) {
  return std::string{to_string(d.severity)} + '[' + d.rule_id + "] " + to_string(d.target) + ": " +
         d.message;
}

}  // namespace qualibd
