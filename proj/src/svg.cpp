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
#include <cmath>
#include <cstdio>
#include <numbers>
#include <tuple>
#include <vector>

#include "qualibd/export.hpp"

namespace qualibd {

namespace {

struct Point {
  double x;
  double y;
};

// Fixed two-decimal rendering with trailing zeros trimmed; locale independent.
std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string pt(Point p) { return num(p.x) + ',' + num(p.y); }

/// XML character data / attribute escaping. Characters XML 1.0 forbids
/// become U+FFFD.
std::string xml_escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n':
      case '\t':
      case '\r': out.push_back(' '); break;
      default:
        if (c < 0x20) {
          out += "\xEF\xBF\xBD";
        } else {
          out.push_back(ch);
        }
    }
  }
  return out;
}

Point center(const Box& b) { return {b.x + b.w / 2, b.y + b.h / 2}; }

std::string cloud_path(const Box& b) {
  constexpr int kBumps = 10;
  const Point c = center(b);
  const double rx = b.w / 2 * 0.9;
  const double ry = b.h / 2 * 0.82;
  std::vector<Point> ring;
  for (int i = 0; i < kBumps; ++i) {
    const double a = 2 * std::numbers::pi * i / kBumps;
    ring.push_back({c.x + rx * std::cos(a), c.y + ry * std::sin(a)});
  }
  std::string d = "M " + pt(ring[0]);
  for (int i = 1; i <= kBumps; ++i) {
    const Point& p = ring[static_cast<std::size_t>(i % kBumps)];
    const Point& q = ring[static_cast<std::size_t>(i - 1)];
    const double r = std::hypot(p.x - q.x, p.y - q.y) * 0.6;
    d += " A " + num(r) + ',' + num(r) + " 0 0 1 " + pt(p);
  }
  return d + " Z";
}

std::string shape_element(const Box& b, const StyleSpec& style) {
  std::string paint = " fill=\"" + std::string{style.fill} + "\" stroke=\"" +
                      std::string{style.stroke} + "\" stroke-width=\"1.5\"";
  if (style.line == LineStyle::Dashed) paint += " stroke-dasharray=\"6 4\"";

  switch (style.shape.value_or(Shape::Box)) {
    case Shape::RoundedBox:
      return "<rect x=\"" + num(b.x) + "\" y=\"" + num(b.y) + "\" width=\"" + num(b.w) +
             "\" height=\"" + num(b.h) + "\" rx=\"12\" ry=\"12\"" + paint + "/>";
    case Shape::Box:
      return "<rect x=\"" + num(b.x) + "\" y=\"" + num(b.y) + "\" width=\"" + num(b.w) +
             "\" height=\"" + num(b.h) + "\"" + paint + "/>";
    case Shape::Diamond: {
      const Point c = center(b);
      return "<polygon points=\"" + pt({c.x, b.y}) + ' ' + pt({b.x + b.w, c.y}) + ' ' +
             pt({c.x, b.y + b.h}) + ' ' + pt({b.x, c.y}) + "\"" + paint + "/>";
    }
    case Shape::Note: {
      const double fold = std::min(14.0, std::min(b.w, b.h) / 3);
      const std::string d = "M " + pt({b.x, b.y}) + " L " + pt({b.x + b.w - fold, b.y}) + " L " +
                            pt({b.x + b.w, b.y + fold}) + " L " + pt({b.x + b.w, b.y + b.h}) +
                            " L " + pt({b.x, b.y + b.h}) + " Z M " +
                            pt({b.x + b.w - fold, b.y}) + " L " +
                            pt({b.x + b.w - fold, b.y + fold}) + " L " +
                            pt({b.x + b.w, b.y + fold});
      return "<path d=\"" + d + "\"" + paint + "/>";
    }
    case Shape::Cloud: return "<path d=\"" + cloud_path(b) + "\"" + paint + "/>";
  }
  return {};
}

std::string text_element(Point at, std::string_view text, int size, std::string_view weight) {
  std::string out = "<text x=\"" + num(at.x) + "\" y=\"" + num(at.y) +
                    "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"" +
                    std::to_string(size) + "\"";
  if (!weight.empty()) out += " font-weight=\"" + std::string{weight} + "\"";
  return out + ">" + xml_escape(text) + "</text>";
}

// Border midpoints facing each other along the dominant axis.
std::pair<Point, Point> anchors(const Box& from, const Box& to) {
  const Point a = center(from);
  const Point b = center(to);
  if (to.y >= from.y + from.h) return {{a.x, from.y + from.h}, {b.x, to.y}};
  if (from.y >= to.y + to.h) return {{a.x, from.y}, {b.x, to.y + to.h}};
  if (b.x >= a.x) return {{from.x + from.w, a.y}, {to.x, b.y}};
  return {{from.x, a.y}, {to.x + to.w, b.y}};
}

const Box& box_of(const LayoutResult& layout, NodeId id) {
  auto it = layout.boxes.find(id);
  if (it == layout.boxes.end()) throw RenderError("layout has no box for node " + to_string(id));
  return it->second;
}

}  // namespace

std::string to_svg(const Model& model, const LayoutResult& layout) {
  double width = 2 * kLayoutMargin;
  double height = 2 * kLayoutMargin;
  for (const auto& [id, node] : model.nodes) {
    const Box& b = box_of(layout, id);
    width = std::max(width, b.x + b.w + kLayoutMargin);
    height = std::max(height, b.y + b.h + kLayoutMargin + 16);
  }

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + ' ' + num(height) +
         "\">\n";
  out += "  <title>" + xml_escape(model.name) + "</title>\n";
  out += "  <defs>\n";
  for (EdgeKind kind : kAllEdgeKinds) {
    out += "    <marker id=\"arrow-" + std::string{to_string(kind)} +
           "\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto-start-reverse\"><path d=\"M 0,0 L 10,5 L 0,10 Z\" fill=\"" +
           std::string{style_for(kind).stroke} + "\"/></marker>\n";
  }
  out += "  </defs>\n";

  std::vector<const Edge*> edges;
  for (const auto& [id, edge] : model.edges) edges.push_back(&edge);
  std::ranges::sort(edges, [](const Edge* a, const Edge* b) {
    return std::tie(a->kind, a->from, a->to, a->id) < std::tie(b->kind, b->from, b->to, b->id);
  });
  for (const Edge* edge : edges) {
    const StyleSpec style = style_for(edge->kind);
    const auto [p, q] = anchors(box_of(layout, edge->from), box_of(layout, edge->to));
    out += "  <g class=\"edge\" id=\"" + to_string(edge->id) + "\" data-kind=\"" +
           std::string{to_string(edge->kind)} + "\">";
    out += "<path d=\"M " + pt(p) + " L " + pt(q) + "\" fill=\"none\" stroke=\"" +
           std::string{style.stroke} + "\" stroke-width=\"1.5\"";
    if (style.line == LineStyle::Dashed) out += " stroke-dasharray=\"6 4\"";
    out += " marker-end=\"url(#arrow-" + std::string{to_string(edge->kind)} + ")\"/>";
    if (edge->label) {
      out += text_element({(p.x + q.x) / 2, (p.y + q.y) / 2 - 8}, *edge->label, 11, "");
    }
    out += "</g>\n";
  }

  for (const auto& [id, node] : model.nodes) {
    const Box& b = box_of(layout, id);
    const StyleSpec style = style_for(node.kind);
    out += "  <g class=\"node\" id=\"" + to_string(id) + "\" data-kind=\"" +
           std::string{to_string(node.kind)} + "\">";
    out += shape_element(b, style);

    std::string label = node.name.value_or("");
    if (node.kind == NodeKind::PermutationAttribute) {
      if (node.attr_value) label += " = " + *node.attr_value;
      out += text_element(center(b), label, 10, "");
    } else if (style.label_placement == LabelPlacement::Below) {
      out += text_element({b.x + b.w / 2, b.y + b.h + 12}, label, 12, "");
    } else if (node.kind == NodeKind::Permutation && !model.attributes_of(id).empty()) {
      out += text_element({b.x + b.w / 2, b.y + 15}, label, 12, "bold");
    } else {
      out += text_element(center(b), label, 12, "");
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace qualibd
