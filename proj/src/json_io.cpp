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

#include "qualibd/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace qualibd {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw DocumentError(DocumentError::Kind::Schema, path, what);
}

/// Typed accessors that report a JSON pointer on failure.
class Reader {
 public:
  Reader(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& value() const { return value_; }

  void require_object() const {
    if (!value_.is_object()) schema_error(path_, "expected an object");
  }

  void only_keys(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, _] : value_.items()) {
      if (std::ranges::find(allowed, std::string_view{key}) == allowed.end()) {
        schema_error(path_ + '/' + key, "unknown key");
      }
    }
  }

  bool has(const char* key) const { return value_.contains(key); }

  Reader at(const char* key) const {
    if (!value_.contains(key)) schema_error(path_ + '/' + key, "missing required key");
    return Reader{value_.at(key), path_ + '/' + key};
  }

  std::string string() const {
    if (!value_.is_string()) schema_error(path_, "expected a string");
    return value_.get<std::string>();
  }

  std::optional<std::string> optional_string(const char* key) const {
    if (!has(key)) return std::nullopt;
    return at(key).string();
  }

  std::uint64_t unsigned_integer() const {
    if (!value_.is_number_unsigned()) schema_error(path_, "expected a non-negative integer");
    return value_.get<std::uint64_t>();
  }

  double number() const {
    if (!value_.is_number()) schema_error(path_, "expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) schema_error(path_, "expected a finite number");
    return v;
  }

  NodeId node_id() const {
    auto id = parse_node_id(string());
    if (!id) schema_error(path_, "expected a node id of the form n<k>");
    return *id;
  }

  EdgeId edge_id() const {
    auto id = parse_edge_id(string());
    if (!id) schema_error(path_, "expected an edge id of the form e<k>");
    return *id;
  }

  ElementId element_id() const {
    auto id = parse_element_id(string());
    if (!id) schema_error(path_, "expected an element id (n<k> or e<k>)");
    return *id;
  }

  NodeKind node_kind() const {
    auto kind = parse_node_kind(string());
    if (!kind) schema_error(path_, "unknown node kind '" + value_.get<std::string>() + "'");
    return *kind;
  }

  EdgeKind edge_kind() const {
    auto kind = parse_edge_kind(string());
    if (!kind) schema_error(path_, "unknown edge kind '" + value_.get<std::string>() + "'");
    return *kind;
  }

  AttributeValueKind attribute_kind() const {
    auto kind = parse_attribute_value_kind(string());
    if (!kind) schema_error(path_, "unknown attribute kind '" + value_.get<std::string>() + "'");
    return *kind;
  }

  Box box() const {
    if (!value_.is_array() || value_.size() != 4) {
      schema_error(path_, "expected [x, y, w, h]");
    }
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      v[i] = Reader{value_[i], path_ + '/' + std::to_string(i)}.number();
    }
    return Box{v[0], v[1], v[2], v[3]};
  }

  template <typename F>
  void each(F&& f) const {
    if (!value_.is_array()) schema_error(path_, "expected an array");
    for (std::size_t i = 0; i < value_.size(); ++i) {
      f(Reader{value_[i], path_ + '/' + std::to_string(i)});
    }
  }

 private:
  const json& value_;
  std::string path_;
};

Node read_node(const Reader& r) {
  r.require_object();
  r.only_keys({"id", "kind", "name", "owner", "attr_kind", "attr_value"});
  Node node;
  node.id = r.at("id").node_id();
  node.kind = r.at("kind").node_kind();
  node.name = r.optional_string("name");
  if (r.has("owner")) node.owner = r.at("owner").node_id();
  if (r.has("attr_kind")) node.attr_value_kind = r.at("attr_kind").attribute_kind();
  node.attr_value = r.optional_string("attr_value");
  return node;
}

Edge read_edge(const Reader& r) {
  r.require_object();
  r.only_keys({"id", "kind", "from", "to", "label"});
  Edge edge;
  edge.id = r.at("id").edge_id();
  edge.kind = r.at("kind").edge_kind();
  edge.from = r.at("from").node_id();
  edge.to = r.at("to").node_id();
  edge.label = r.optional_string("label");
  return edge;
}

ordered_json box_json(const Box& b) { return ordered_json::array({b.x, b.y, b.w, b.h}); }

}  // namespace

ordered_json model_to_json(const Model& model) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["id"] = model.id.value;
  doc["name"] = model.name;
  doc["revision"] = model.revision;
  doc["next_id"] = model.next_id;

  ordered_json nodes = ordered_json::array();
  for (const auto& [id, node] : model.nodes) {
    ordered_json n;
    n["id"] = to_string(id);
    n["kind"] = to_string(node.kind);
    if (node.name) n["name"] = *node.name;
    if (node.owner) n["owner"] = to_string(*node.owner);
    if (node.attr_value_kind) n["attr_kind"] = to_string(*node.attr_value_kind);
    if (node.attr_value) n["attr_value"] = *node.attr_value;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);

  ordered_json edges = ordered_json::array();
  for (const auto& [id, edge] : model.edges) {
    ordered_json e;
    e["id"] = to_string(id);
    e["kind"] = to_string(edge.kind);
    e["from"] = to_string(edge.from);
    e["to"] = to_string(edge.to);
    if (edge.label) e["label"] = *edge.label;
    edges.push_back(std::move(e));
  }
  doc["edges"] = std::move(edges);

  ordered_json geometry = ordered_json::object();
  for (const auto& [id, box] : model.geometry) geometry[to_string(id)] = box_json(box);
  doc["geometry"] = std::move(geometry);
  return doc;
}

std::string to_json(const Model& model) { return model_to_json(model).dump(2) + "\n"; }

Model model_from_json(const json& document, Strictness strictness) {
  const Reader root{document, ""};
  root.require_object();
  root.only_keys({"format_version", "id", "name", "revision", "next_id", "nodes", "edges",
                  "geometry"});
  const Reader version = root.at("format_version");
  if (!version.value().is_number_integer() || version.value().get<std::int64_t>() != kFormatVersion) {
    throw DocumentError(DocumentError::Kind::Version, version.path(),
                        "unsupported format_version " + version.value().dump() + " (expected " +
                            std::to_string(kFormatVersion) + ")");
  }

  Model model;
  model.id = ModelId{root.at("id").string()};
  model.name = root.at("name").string();
  if (root.has("revision")) model.revision = root.at("revision").unsigned_integer();

  std::uint64_t max_id = 0;
  if (root.has("nodes")) {
    root.at("nodes").each([&](const Reader& r) {
      Node node = read_node(r);
      max_id = std::max(max_id, node.id.value);
      if (!model.nodes.emplace(node.id, node).second) schema_error(r.path() + "/id", "duplicate id");
    });
  }
  if (root.has("edges")) {
    root.at("edges").each([&](const Reader& r) {
      Edge edge = read_edge(r);
      max_id = std::max(max_id, edge.id.value);
      if (!model.edges.emplace(edge.id, edge).second) schema_error(r.path() + "/id", "duplicate id");
    });
  }
  if (root.has("geometry")) {
    const Reader geometry = root.at("geometry");
    geometry.require_object();
    for (const auto& [key, value] : geometry.value().items()) {
      const Reader entry{value, geometry.path() + '/' + key};
      auto id = parse_node_id(key);
      if (!id) schema_error(entry.path(), "geometry key must be a node id");
      model.geometry[*id] = entry.box();
    }
  }
  model.next_id = max_id + 1;
  if (root.has("next_id")) model.next_id = std::max(model.next_id, root.at("next_id").unsigned_integer());

  if (strictness == Strictness::Strict) {
    auto problems = rule_structural(model);
    if (!problems.empty()) {
      std::string what = "document has structural errors:";
      for (const auto& d : problems) what += "\n  " + render_human(d);
      DocumentError error(DocumentError::Kind::Structure, "", what);
      error.diagnostics = std::move(problems);
      throw error;
    }
  }
  return model;
}

Model from_json(std::string_view text, Strictness strictness) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(DocumentError::Kind::Syntax, "", e.what());
  }
  return model_from_json(document, strictness);
}

ordered_json diagnostic_to_json(const Diagnostic& d) {
  ordered_json out;
  out["rule"] = d.rule_id;
  out["severity"] = to_string(d.severity);
  out["target"] = to_string(d.target);
  out["message"] = d.message;
  return out;
}

ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  ordered_json out = ordered_json::array();
  for (const auto& d : diagnostics) out.push_back(diagnostic_to_json(d));
  return out;
}

EditCommand command_from_json(const json& command) {
  const Reader r{command, ""};
  r.require_object();
  const std::string type = r.at("type").string();

  if (type == "CreateNode") {
    r.only_keys({"type", "base_revision", "kind", "name", "owner", "attr_kind", "attr_value"});
    CreateNode cmd;
    cmd.kind = r.at("kind").node_kind();
    cmd.name = r.optional_string("name");
    if (r.has("owner")) cmd.owner = r.at("owner").node_id();
    if (r.has("attr_kind")) cmd.attr_value_kind = r.at("attr_kind").attribute_kind();
    cmd.attr_value = r.optional_string("attr_value");
    return cmd;
  }
  if (type == "CreateEdge") {
    r.only_keys({"type", "base_revision", "kind", "from", "to", "label"});
    return CreateEdge{r.at("kind").edge_kind(), r.at("from").node_id(), r.at("to").node_id(),
                      r.optional_string("label")};
  }
  if (type == "SetLabel") {
    r.only_keys({"type", "base_revision", "target", "text"});
    return SetLabel{r.at("target").element_id(), r.at("text").string()};
  }
  if (type == "ReconnectEdge") {
    r.only_keys({"type", "base_revision", "edge", "end", "node"});
    const std::string end = r.at("end").string();
    if (end != "source" && end != "target") schema_error("/end", "expected \"source\" or \"target\"");
    return ReconnectEdge{r.at("edge").edge_id(), end == "source" ? EdgeEnd::Source : EdgeEnd::Target,
                         r.at("node").node_id()};
  }
  if (type == "Delete") {
    r.only_keys({"type", "base_revision", "target"});
    return DeleteElement{r.at("target").element_id()};
  }
  if (type == "AddPermutationAttribute") {
    r.only_keys({"type", "base_revision", "permutation", "name", "attr_kind", "attr_value"});
    AddPermutationAttribute cmd;
    cmd.permutation = r.at("permutation").node_id();
    cmd.name = r.optional_string("name");
    if (r.has("attr_kind")) cmd.value_kind = r.at("attr_kind").attribute_kind();
    cmd.value = r.optional_string("attr_value");
    return cmd;
  }
  if (type == "SetGeometry") {
    r.only_keys({"type", "base_revision", "node", "box"});
    return SetGeometry{r.at("node").node_id(), r.at("box").box()};
  }
  if (type == "Undo") {
    r.only_keys({"type", "base_revision"});
    return Undo{};
  }
  if (type == "Redo") {
    r.only_keys({"type", "base_revision"});
    return Redo{};
  }
  schema_error("/type", "unknown command type '" + type + "'");
}

ordered_json command_to_json(const EditCommand& command) {
  ordered_json out;
  std::visit(
      [&](const auto& cmd) {
        using T = std::decay_t<decltype(cmd)>;
        if constexpr (std::is_same_v<T, CreateNode>) {
          out["type"] = "CreateNode";
          out["kind"] = to_string(cmd.kind);
          if (cmd.name) out["name"] = *cmd.name;
          if (cmd.owner) out["owner"] = to_string(*cmd.owner);
          if (cmd.attr_value_kind) out["attr_kind"] = to_string(*cmd.attr_value_kind);
          if (cmd.attr_value) out["attr_value"] = *cmd.attr_value;
        } else if constexpr (std::is_same_v<T, CreateEdge>) {
          out["type"] = "CreateEdge";
          out["kind"] = to_string(cmd.kind);
          out["from"] = to_string(cmd.from);
          out["to"] = to_string(cmd.to);
          if (cmd.label) out["label"] = *cmd.label;
        } else if constexpr (std::is_same_v<T, SetLabel>) {
          out["type"] = "SetLabel";
          out["target"] = to_string(cmd.target);
          out["text"] = cmd.text;
        } else if constexpr (std::is_same_v<T, ReconnectEdge>) {
          out["type"] = "ReconnectEdge";
          out["edge"] = to_string(cmd.edge);
          out["end"] = cmd.end == EdgeEnd::Source ? "source" : "target";
          out["node"] = to_string(cmd.node);
        } else if constexpr (std::is_same_v<T, DeleteElement>) {
          out["type"] = "Delete";
          out["target"] = to_string(cmd.target);
        } else if constexpr (std::is_same_v<T, AddPermutationAttribute>) {
          out["type"] = "AddPermutationAttribute";
          out["permutation"] = to_string(cmd.permutation);
          if (cmd.name) out["name"] = *cmd.name;
          out["attr_kind"] = to_string(cmd.value_kind);
          if (cmd.value) out["attr_value"] = *cmd.value;
        } else if constexpr (std::is_same_v<T, SetGeometry>) {
          out["type"] = "SetGeometry";
          out["node"] = to_string(cmd.node);
          out["box"] = box_json(cmd.box);
        } else if constexpr (std::is_same_v<T, Undo>) {
          out["type"] = "Undo";
        } else {
          out["type"] = "Redo";
        }
      },
      command);
  return out;
}

ordered_json outcome_to_json(const EditOutcome& outcome) {
  ordered_json out;
  out["outcome"] = to_string(outcome.status);
  if (outcome.reason != Reason::None) out["reason"] = to_string(outcome.reason);
  if (outcome.applied()) {
    ordered_json ids = ordered_json::array();
    for (const auto& id : outcome.created) ids.push_back(to_string(id));
    out["ids"] = std::move(ids);
  }
  out["revision"] = outcome.revision;
  return out;
}

}  // namespace qualibd
