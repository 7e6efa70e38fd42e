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

#include <algorithm>
#include <tuple>
#include <vector>

#include "qualibd/export.hpp"

namespace qualibd {

namespace {

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out.push_back(c);
    }
  }
  out += '"';
  return out;
}

std::string node_attributes(const Model& model, const Node& node) {
  const StyleSpec style = style_for(node.kind);
  std::string label = node.name.value_or("");
  for (NodeId aid : model.attributes_of(node.id)) {
    const Node& attr = model.nodes.at(aid);
    label += '\n';
    label += attr.attr_value_kind == AttributeValueKind::Quantitative ? "[quant] " : "[qual] ";
    label += attr.name.value_or("");
    if (attr.attr_value) label += " = " + *attr.attr_value;
  }

  std::string shape;
  std::string styles = "filled";
  switch (style.shape.value_or(Shape::Box)) {
    case Shape::Cloud: shape = "ellipse"; break;
    case Shape::RoundedBox:
      shape = "box";
      styles = "rounded,filled";
      break;
    case Shape::Box: shape = "box"; break;
    case Shape::Diamond: shape = "diamond"; break;
    case Shape::Note: shape = "note"; break;
  }
  if (style.line == LineStyle::Dashed) styles += ",dashed";

  const bool below = style.label_placement == LabelPlacement::Below;
  std::string out = "[label=" + dot_quote(below ? "" : label) + ", shape=" + shape +
                    ", style=" + dot_quote(styles) + ", fillcolor=" + dot_quote(style.fill) +
                    ", color=" + dot_quote(style.stroke);
  if (below) out += ", xlabel=" + dot_quote(label);
  out += ", tooltip=" + dot_quote(to_string(node.kind)) + "]";
  return out;
}

}  // namespace

std::string to_dot(const Model& model) {
  std::string out = "digraph " + dot_quote(model.name) + " {\n";
  for (const auto& [id, node] : model.nodes) {
    if (node.kind == NodeKind::PermutationAttribute) continue;
    out += "  " + dot_quote(to_string(id)) + ' ' + node_attributes(model, node) + ";\n";
  }

  std::vector<const Edge*> edges;
  for (const auto& [id, edge] : model.edges) edges.push_back(&edge);
  std::ranges::sort(edges, [](const Edge* a, const Edge* b) {
    return std::tie(a->kind, a->from, a->to, a->id) < std::tie(b->kind, b->from, b->to, b->id);
  });
  for (const Edge* edge : edges) {
    const StyleSpec style = style_for(edge->kind);
    out += "  " + dot_quote(to_string(edge->from)) + " -> " + dot_quote(to_string(edge->to)) +
           " [style=" + std::string{to_string(style.line)} + ", color=" + dot_quote(style.stroke) +
           ", tooltip=" + dot_quote(to_string(edge->kind));
    if (edge->label) out += ", label=" + dot_quote(*edge->label);
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace qualibd
