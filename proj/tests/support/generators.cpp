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

#include "generators.hpp"

#include <array>
#include <cstdlib>
#include <string_view>
#include <vector>

namespace qualibd::testing {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>{0, items.size() - 1}(rng)];
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution{p}(rng); }

int below(Rng& rng, int n) { return std::uniform_int_distribution<int>{0, n - 1}(rng); }

constexpr std::array<std::string_view, 12> kWords{
    "Velocity", "Latency",  "Volume",     "Throughput", "ingest", "tweets",
    "real time", "accuracy", "Veracity", "scale",      "cache",  "replicas"};

constexpr std::array<std::string_view, 9> kOddPieces{
    "\"quoted\"", "back\\slash", "line\nbreak", "tab\there", "caf\xc3\xa9",
    "\xe6\xb5\x81\xe9\x87\x8f", "<tag & 'amp'>", "x \xe2\x86\x92 y", "}{;#"};

NodeKind random_top_kind(Rng& rng) {
  static const std::vector<NodeKind> kinds{NodeKind::Goal,
                                           NodeKind::NfrSoftgoal,
                                           NodeKind::BigDataCharacteristic,
                                           NodeKind::Permutation,
                                           NodeKind::OperationalizingSoftgoal,
                                           NodeKind::ClaimSoftgoal};
  return pick(rng, kinds);
}

EdgeKind random_edge_kind(Rng& rng) {
  static const std::vector<EdgeKind> kinds{EdgeKind::AssociationLink, EdgeKind::PermutationLink,
                                           EdgeKind::DecompositionLink, EdgeKind::ContributionLink,
                                           EdgeKind::ArgumentationLink};
  return pick(rng, kinds);
}

std::vector<NodeId> node_ids(const Model& model) {
  std::vector<NodeId> ids;
  for (const auto& [id, node] : model.nodes) ids.push_back(id);
  return ids;
}

NodeId some_node(Rng& rng, const Model& model) {
  if (model.nodes.empty() || chance(rng, 0.03)) return NodeId{model.next_id + 7};
  return pick(rng, node_ids(model));
}

}  // namespace

std::optional<std::string> random_name(Rng& rng, bool plain) {
  if (!plain) {
    const int roll = below(rng, 20);
    if (roll == 0) return std::nullopt;
    if (roll == 1) return std::string{};
    if (roll == 2) return std::string{"  \t "};
  }
  std::string out;
  const int words = 1 + below(rng, 3);
  for (int i = 0; i < words; ++i) {
    if (i > 0) out += ' ';
    if (!plain && chance(rng, 0.15)) {
      out += kOddPieces[below(rng, static_cast<int>(kOddPieces.size()))];
    } else {
      out += kWords[below(rng, static_cast<int>(kWords.size()))];
    }
  }
  return out;
}

Model random_model(Rng& rng, const ModelShape& shape) {
  Model seed;
  seed.id = ModelId{"m" + std::to_string(rng() % 100000)};
  seed.name = random_name(rng, shape.plain_names).value_or("model");
  Document doc{std::move(seed)};

  const int count = std::uniform_int_distribution<int>{shape.min_nodes, shape.max_nodes}(rng);
  std::vector<NodeId> permutations;
  for (int i = 0; i < count; ++i) {
    if (!permutations.empty() && chance(rng, 0.2)) {
      AddPermutationAttribute cmd;
      cmd.permutation = pick(rng, permutations);
      cmd.name = random_name(rng, shape.plain_names);
      cmd.value_kind = chance(rng, 0.5) ? AttributeValueKind::Quantitative
                                        : AttributeValueKind::Qualitative;
      if (chance(rng, 0.7)) cmd.value = random_name(rng, true).value_or("1");
      doc.apply(cmd);
      continue;
    }
    CreateNode cmd;
    cmd.kind = random_top_kind(rng);
    cmd.name = random_name(rng, shape.plain_names);
    const auto outcome = doc.apply(cmd);
    if (cmd.kind == NodeKind::Permutation) permutations.push_back(std::get<NodeId>(outcome.created.at(0)));
  }

  const std::vector<NodeId> ids = node_ids(doc.model());
  if (ids.size() >= 2) {
    const int attempts = count * shape.edge_attempts_per_node * 3;
    for (int i = 0; i < attempts; ++i) {
      CreateEdge cmd;
      cmd.kind = random_edge_kind(rng);
      cmd.from = pick(rng, ids);
      cmd.to = pick(rng, ids);
      if (cmd.kind == EdgeKind::ContributionLink && chance(rng, 0.6)) {
        cmd.label = random_name(rng, shape.plain_names).value_or("help");
      }
      doc.apply(cmd);
    }
  }
  if (!shape.keep_geometry) {
    Model m = doc.model();
    m.geometry.clear();
    return m;
  }
  return doc.model();
}

EditCommand random_command(Rng& rng, const Model& model) {
  const int roll = below(rng, 100);
  if (roll < 18 || model.nodes.size() < 2) {
    CreateNode cmd;
    cmd.kind = random_top_kind(rng);
    cmd.name = random_name(rng);
    if (chance(rng, 0.03)) {
      cmd.kind = NodeKind::PermutationAttribute;
      if (chance(rng, 0.5)) cmd.owner = some_node(rng, model);
    }
    return cmd;
  }
  if (roll < 50) {
    CreateEdge cmd;
    if (!model.edges.empty() && chance(rng, 0.5)) {
      // Second attempt on a pair that is already connected, any kind.
      std::vector<const Edge*> edges;
      for (const auto& [id, e] : model.edges) edges.push_back(&e);
      const Edge* existing = pick(rng, edges);
      cmd.kind = chance(rng, 0.5) ? existing->kind : random_edge_kind(rng);
      cmd.from = existing->from;
      cmd.to = existing->to;
    } else {
      cmd.kind = random_edge_kind(rng);
      cmd.from = some_node(rng, model);
      cmd.to = chance(rng, 0.04) ? cmd.from : some_node(rng, model);
    }
    if (chance(rng, 0.3)) cmd.label = random_name(rng).value_or("hurt");
    return cmd;
  }
  if (roll < 60) {
    SetLabel cmd;
    if (!model.edges.empty() && chance(rng, 0.3)) {
      std::vector<EdgeId> edges;
      for (const auto& [id, e] : model.edges) edges.push_back(id);
      cmd.target = pick(rng, edges);
    } else {
      cmd.target = some_node(rng, model);
    }
    cmd.text = random_name(rng).value_or("");
    return cmd;
  }
  if (roll < 70 && !model.edges.empty()) {
    std::vector<EdgeId> edges;
    for (const auto& [id, e] : model.edges) edges.push_back(id);
    ReconnectEdge cmd;
    cmd.edge = chance(rng, 0.03) ? EdgeId{model.next_id + 3} : pick(rng, edges);
    cmd.end = chance(rng, 0.5) ? EdgeEnd::Source : EdgeEnd::Target;
    cmd.node = some_node(rng, model);
    return cmd;
  }
  if (roll < 77) {
    DeleteElement cmd;
    if (!model.edges.empty() && chance(rng, 0.4)) {
      std::vector<EdgeId> edges;
      for (const auto& [id, e] : model.edges) edges.push_back(id);
      cmd.target = pick(rng, edges);
    } else {
      cmd.target = some_node(rng, model);
    }
    return cmd;
  }
  if (roll < 85) {
    AddPermutationAttribute cmd;
    std::vector<NodeId> perms;
    for (const auto& [id, n] : model.nodes) {
      if (n.kind == NodeKind::Permutation) perms.push_back(id);
    }
    cmd.permutation = perms.empty() || chance(rng, 0.1) ? some_node(rng, model) : pick(rng, perms);
    cmd.name = random_name(rng);
    cmd.value_kind = chance(rng, 0.5) ? AttributeValueKind::Quantitative
                                      : AttributeValueKind::Qualitative;
    if (chance(rng, 0.5)) cmd.value = random_name(rng).value_or("");
    return cmd;
  }
  if (roll < 91) {
    SetGeometry cmd;
    cmd.node = some_node(rng, model);
    cmd.box = Box{static_cast<double>(below(rng, 900)), static_cast<double>(below(rng, 700)),
                  static_cast<double>(60 + below(rng, 200)), static_cast<double>(below(rng, 3) == 0 ? 0 : 40 + below(rng, 80))};
    return cmd;
  }
  if (roll < 97) return Undo{};
  return Redo{};
}

std::uint64_t seed_for(std::uint64_t i) {
  static const std::uint64_t base = [] {
    const char* env = std::getenv("QUALIBD_TEST_SEED");
    return env != nullptr ? std::strtoull(env, nullptr, 10) : 20260101ULL;
  }();
  return base * 1000003ULL + i;
}

}  // namespace qualibd::testing
