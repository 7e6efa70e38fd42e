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

#include "qualibd/model.hpp"

#include <bit>
#include <cctype>
#include <charconv>

namespace qualibd {

namespace {

std::optional<std::uint64_t> parse_counter(std::string_view text, char prefix) {
  if (text.size() < 2 || text.front() != prefix) return std::nullopt;
  std::uint64_t value = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value == 0) return std::nullopt;
  // Reject leading zeros so the text form is canonical.
  if (*first == '0') return std::nullopt;
  return value;
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void opt(const std::optional<std::string>& s) {
    u64(s.has_value());
    if (s) str(*s);
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string to_string(NodeId id) { return "n" + std::to_string(id.value); }
std::string to_string(EdgeId id) { return "e" + std::to_string(id.value); }

std::string to_string(const ElementId& id) {
  return std::visit([](auto v) { return to_string(v); }, id);
}

std::string to_string(const TargetId& id) {
  return std::visit(
      [](const auto& v) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ModelId>) {
          return v.value;
        } else {
          return to_string(v);
        }
      },
      id);
}

std::optional<NodeId> parse_node_id(std::string_view text) noexcept {
  if (auto v = parse_counter(text, 'n')) return NodeId{*v};
  return std::nullopt;
}

std::optional<EdgeId> parse_edge_id(std::string_view text) noexcept {
  if (auto v = parse_counter(text, 'e')) return EdgeId{*v};
  return std::nullopt;
}

std::optional<ElementId> parse_element_id(std::string_view text) noexcept {
  if (auto n = parse_node_id(text)) return ElementId{*n};
  if (auto e = parse_edge_id(text)) return ElementId{*e};
  return std::nullopt;
}

bool overlaps(const Box& a, const Box& b) noexcept {
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

bool strictly_contains(const Box& outer, const Box& inner) noexcept {
  return inner.x > outer.x && inner.y > outer.y && inner.x + inner.w < outer.x + outer.w &&
         inner.y + inner.h < outer.y + outer.h;
}

const Node* Model::find_node(NodeId id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

const Edge* Model::find_edge(EdgeId id) const {
  auto it = edges.find(id);
  return it == edges.end() ? nullptr : &it->second;
}

bool Model::contains(const ElementId& id) const {
  if (const auto* n = std::get_if<NodeId>(&id)) return nodes.contains(*n);
  return edges.contains(std::get<EdgeId>(id));
}

bool Model::contains(const TargetId& target) const {
  if (const auto* m = std::get_if<ModelId>(&target)) return *m == id;
  if (const auto* n = std::get_if<NodeId>(&target)) return nodes.contains(*n);
  return edges.contains(std::get<EdgeId>(target));
}

std::vector<NodeId> Model::attributes_of(NodeId permutation) const {
  std::vector<NodeId> out;
  for (const auto& [nid, node] : nodes) {
    if (node.kind == NodeKind::PermutationAttribute && node.owner == permutation) out.push_back(nid);
  }
  return out;
}

std::vector<EdgeId> Model::incident_edges(NodeId node) const {
  std::vector<EdgeId> out;
  for (const auto& [eid, edge] : edges) {
    if (edge.from == node || edge.to == node) out.push_back(eid);
  }
  return out;
}

std::optional<EdgeId> Model::find_connection(NodeId from, NodeId to) const {
  for (const auto& [eid, edge] : edges) {
    if (edge.from == from && edge.to == to) return eid;
  }
  return std::nullopt;
}

bool content_equal(const Model& a, const Model& b) {
  return a.id == b.id && a.name == b.name && a.nodes == b.nodes && a.edges == b.edges &&
         a.geometry == b.geometry;
}

std::uint64_t model_hash(const Model& model) {
  Fnv1a h;
  h.str(model.id.value);
  h.str(model.name);
  h.u64(model.revision);
  h.u64(model.next_id);
  h.u64(model.nodes.size());
  for (const auto& [id, n] : model.nodes) {
    h.u64(id.value);
    h.u64(static_cast<std::uint64_t>(n.kind));
    h.opt(n.name);
    h.u64(n.owner ? n.owner->value : 0);
    h.u64(n.attr_value_kind ? 1 + static_cast<std::uint64_t>(*n.attr_value_kind) : 0);
    h.opt(n.attr_value);
  }
  h.u64(model.edges.size());
  for (const auto& [id, e] : model.edges) {
    h.u64(id.value);
    h.u64(static_cast<std::uint64_t>(e.kind));
    h.u64(e.from.value);
    h.u64(e.to.value);
    h.opt(e.label);
  }
  h.u64(model.geometry.size());
  for (const auto& [id, box] : model.geometry) {
    h.u64(id.value);
    h.f64(box.x);
    h.f64(box.y);
    h.f64(box.w);
    h.f64(box.h);
  }
  return h.value();
}

std::string slugify(std::string_view name) {
  std::string out;
  bool dash = false;
  for (unsigned char c : name) {
    if (std::isalnum(c) != 0) {
      if (dash && !out.empty()) out.push_back('-');
      out.push_back(static_cast<char>(std::tolower(c)));
      dash = false;
    } else {
      dash = true;
    }
    if (out.size() >= 48) break;
  }
  return out.empty() ? "model" : out;
}

}  // namespace qualibd
