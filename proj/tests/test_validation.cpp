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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "qualibd/validation.hpp"

using namespace qualibd;

namespace {

Node node(std::uint64_t id, NodeKind kind, std::optional<std::string> name) {
  return Node{NodeId{id}, kind, std::move(name), {}, {}, {}};
}

void add(Model& m, Node n) { m.nodes[n.id] = std::move(n); }

void add(Model& m, std::uint64_t id, EdgeKind kind, std::uint64_t from, std::uint64_t to) {
  m.edges[EdgeId{id}] = Edge{EdgeId{id}, kind, NodeId{from}, NodeId{to}, {}};
}

std::size_t count_rule(const std::vector<Diagnostic>& ds, std::string_view rule) {
  return static_cast<std::size_t>(std::ranges::count_if(ds, [&](const Diagnostic& d) { return d.rule_id == rule; }));
}

// The running example: G, V, L, P1 with an attribute, O1, C1, all linked.
Model scenario() {
  Model m;
  m.id = ModelId{"m"};
  m.name = "Velocity x Latency";
  add(m, node(1, NodeKind::Goal, "G"));
  add(m, node(2, NodeKind::BigDataCharacteristic, "Velocity"));
  add(m, node(3, NodeKind::NfrSoftgoal, "Latency"));
  add(m, node(4, NodeKind::Permutation, "Velocity x Latency"));
  Node attr = node(5, NodeKind::PermutationAttribute, "latency");
  attr.owner = NodeId{4};
  attr.attr_value_kind = AttributeValueKind::Quantitative;
  add(m, attr);
  add(m, node(6, NodeKind::OperationalizingSoftgoal, "O1"));
  add(m, node(7, NodeKind::ClaimSoftgoal, "C1"));
  add(m, 8, EdgeKind::AssociationLink, 1, 2);
  add(m, 9, EdgeKind::AssociationLink, 1, 3);
  add(m, 10, EdgeKind::PermutationLink, 2, 4);
  add(m, 11, EdgeKind::PermutationLink, 3, 4);
  add(m, 12, EdgeKind::ContributionLink, 6, 4);
  add(m, 13, EdgeKind::ArgumentationLink, 7, 6);
  m.next_id = 14;
  return m;
}

}  // namespace

TEST_CASE("severity tokens") {
  CHECK(to_string(Severity::Warning) == "warning");
  CHECK(parse_severity("error") == Severity::Error);
  CHECK_FALSE(parse_severity("Error").has_value());
  CHECK(Severity::Message < Severity::Warning);
  CHECK(Severity::Warning < Severity::Error);
}

TEST_CASE("empty-label") {
  Model m;
  add(m, node(1, NodeKind::Goal, std::nullopt));
  add(m, node(2, NodeKind::Goal, "Velocity"));
  add(m, node(3, NodeKind::Goal, "   "));
  add(m, node(4, NodeKind::Goal, ""));
  const auto ds = rule_empty_label(m);
  REQUIRE(ds.size() == 3);
  for (const auto& d : ds) {
    CHECK(d.severity == Severity::Warning);
    CHECK(d.rule_id == rules::kEmptyLabel);
    CHECK_FALSE(d.message.empty());
    CHECK(std::get<NodeId>(d.target) != NodeId{2});
  }
}

TEST_CASE("empty-connections") {
  Model m;
  add(m, node(1, NodeKind::Goal, "isolated"));
  add(m, node(2, NodeKind::Goal, "G"));
  add(m, node(3, NodeKind::BigDataCharacteristic, "V"));
  add(m, 4, EdgeKind::AssociationLink, 2, 3);
  add(m, node(5, NodeKind::Permutation, "P"));
  Node attr = node(6, NodeKind::PermutationAttribute, "a");
  attr.owner = NodeId{5};
  attr.attr_value_kind = AttributeValueKind::Qualitative;
  add(m, attr);
  const auto ds = rule_empty_connections(m);
  std::set<NodeId> targets;
  for (const auto& d : ds) targets.insert(std::get<NodeId>(d.target));
  CHECK(targets == std::set<NodeId>{NodeId{1}, NodeId{5}});
}

TEST_CASE("structural") {
  Model m;
  add(m, node(1, NodeKind::Goal, "G1"));
  add(m, node(2, NodeKind::BigDataCharacteristic, "V"));
  add(m, 3, EdgeKind::AssociationLink, 1, 2);
  CHECK(rule_structural(m).empty());

  Model dup = m;
  add(dup, 4, EdgeKind::AssociationLink, 1, 2);
  auto ds = rule_structural(dup);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].rule_id == rules::kDuplicateEdge);
  CHECK(ds[0].severity == Severity::Error);
  CHECK(ds[0].target == TargetId{EdgeId{4}});

  Model bad = m;
  add(bad, node(5, NodeKind::Goal, "G2"));
  add(bad, 6, EdgeKind::ContributionLink, 1, 5);
  ds = rule_structural(bad);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].rule_id == rules::kIncompatibleEndpoints);

  Model dangling = m;
  add(dangling, 7, EdgeKind::AssociationLink, 1, 99);
  ds = rule_structural(dangling);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].rule_id == rules::kDanglingReference);

  Model loop = m;
  add(loop, 8, EdgeKind::DecompositionLink, 1, 1);
  CHECK(rule_structural(loop).at(0).rule_id == rules::kSelfLoop);

  Model orphan = m;
  Node attr = node(9, NodeKind::PermutationAttribute, "a");
  attr.owner = NodeId{1};
  attr.attr_value_kind = AttributeValueKind::Qualitative;
  add(orphan, attr);
  CHECK(rule_structural(orphan).at(0).rule_id == rules::kInvalidContainment);

  Model labelled = m;
  labelled.edges.at(EdgeId{3}).label = "help";
  CHECK(rule_structural(labelled).at(0).rule_id == rules::kLabelNotSupported);

  Model geometry = m;
  geometry.geometry[NodeId{42}] = Box{0, 0, 10, 10};
  geometry.geometry[NodeId{43}] = Box{0, 0, 10, 10};
  ds = rule_structural(geometry);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].target == TargetId{geometry.id});
}

TEST_CASE("permutation completeness") {
  Model m = scenario();
  CHECK(rule_permutation_completeness(m).empty());
  m.edges.erase(EdgeId{11});
  const auto ds = rule_permutation_completeness(m);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].rule_id == rules::kIncompletePermutation);
  CHECK(ds[0].severity == Severity::Warning);
  CHECK(rule_permutation_completeness(Model{}).empty());
}

TEST_CASE("validate: scenario is clean, ordering is deterministic") {
  CHECK(validate(scenario()).empty());

  Model m;
  add(m, node(1, NodeKind::Goal, std::nullopt));
  const auto ds = validate(m);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].rule_id == rules::kEmptyConnections);
  CHECK(ds[1].rule_id == rules::kEmptyLabel);

  Model mixed = scenario();
  add(mixed, 20, EdgeKind::AssociationLink, 1, 2);
  add(mixed, node(21, NodeKind::Goal, " "));
  const auto out = validate(mixed);
  REQUIRE(out.size() == 3);
  CHECK(out[0].severity == Severity::Error);
  CHECK(out == validate(mixed));
  CHECK(has_errors(out));
  CHECK(render_human(out[0]).starts_with("error[duplicate-edge] e20: "));
}

TEST_CASE("rule oracles over a generated corpus") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    testing::Rng rng{testing::seed_for(7000 + i)};
    const Model m = testing::random_model(rng);
    const auto ds = validate(m);
    CHECK(count_rule(ds, rules::kEmptyLabel) == testing::count_blank_names(m));
    CHECK(count_rule(ds, rules::kEmptyConnections) == testing::count_isolated(m));
    CHECK_FALSE(has_errors(ds));

    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      CHECK(m.contains(ds[k].target));
      CHECK_FALSE(ds[k].message.empty());
      CHECK(seen.insert({ds[k].rule_id, to_string(ds[k].target)}).second);
      if (k > 0) {
        const auto& a = ds[k - 1];
        const auto& b = ds[k];
        const bool ordered = a.severity > b.severity ||
                             (a.severity == b.severity &&
                              (a.rule_id < b.rule_id || (a.rule_id == b.rule_id && a.target < b.target)));
        CHECK(ordered);
      }
    }
  }
}
