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
#include "qualibd/document.hpp"
#include "qualibd/metamodel.hpp"

using namespace qualibd;

namespace {

NodeId make(Document& doc, NodeKind kind, std::string name) {
  const auto outcome = doc.apply(CreateNode{kind, std::move(name), {}, {}, {}});
  REQUIRE(outcome.applied());
  return std::get<NodeId>(outcome.created.at(0));
}

EdgeId link(Document& doc, EdgeKind kind, NodeId from, NodeId to) {
  const auto outcome = doc.apply(CreateEdge{kind, from, to, {}});
  REQUIRE(outcome.applied());
  return std::get<EdgeId>(outcome.created.at(0));
}

}  // namespace

TEST_CASE("create_node") {
  Document doc;
  const auto outcome = doc.apply(CreateNode{NodeKind::Goal, "Ingest tweets in real time", {}, {}, {}});
  REQUIRE(outcome.applied());
  CHECK(outcome.revision == 1);
  const NodeId g = std::get<NodeId>(outcome.created.at(0));
  CHECK(doc.model().nodes.at(g).name == "Ingest tweets in real time");
  CHECK(doc.model().geometry.at(g) == Box{40, 40, 150, 60});

  const NodeId p = make(doc, NodeKind::Permutation, "P1");
  const auto attr = doc.apply(CreateNode{NodeKind::PermutationAttribute, "max_latency", p, {}, {}});
  REQUIRE(attr.applied());
  const Node& a = doc.model().nodes.at(std::get<NodeId>(attr.created.at(0)));
  CHECK(a.owner == p);
  CHECK(a.attr_value_kind == AttributeValueKind::Qualitative);
  CHECK(strictly_contains(doc.model().geometry.at(p), doc.model().geometry.at(a.id)));

  const auto bad_owner = doc.apply(CreateNode{NodeKind::PermutationAttribute, "x", g, {}, {}});
  CHECK(bad_owner.rejected());
  CHECK(bad_owner.reason == Reason::OwnerNotPermutation);
  CHECK(doc.apply(CreateNode{NodeKind::PermutationAttribute, "x", {}, {}, {}}).reason ==
        Reason::OwnerRequired);
  CHECK(doc.apply(CreateNode{NodeKind::Goal, "x", p, {}, {}}).reason == Reason::OwnerNotAllowed);
}

TEST_CASE("default grid slots") {
  CHECK(default_slot(0) == Box{40, 40, 150, 60});
  CHECK(default_slot(4) == Box{760, 40, 150, 60});
  CHECK(default_slot(5) == Box{40, 160, 150, 60});
  CHECK(default_slot(12) == Box{40 + 180 * 2, 40 + 120 * 2, 150, 60});
  Document doc;
  for (int i = 0; i < 7; ++i) make(doc, NodeKind::Goal, "g");
  const auto& geo = doc.model().geometry;
  for (auto a = geo.begin(); a != geo.end(); ++a) {
    for (auto b = std::next(a); b != geo.end(); ++b) CHECK_FALSE(overlaps(a->second, b->second));
  }
}

TEST_CASE("create_edge outcomes") {
  Document doc;
  const NodeId g1 = make(doc, NodeKind::Goal, "G1");
  const NodeId v = make(doc, NodeKind::BigDataCharacteristic, "V");
  const NodeId p1 = make(doc, NodeKind::Permutation, "P1");

  link(doc, EdgeKind::PermutationLink, v, p1);
  const Model before = doc.model();
  const auto dup = doc.apply(CreateEdge{EdgeKind::PermutationLink, v, p1, {}});
  CHECK(dup.cancelled());
  CHECK(dup.reason == Reason::DuplicateEdge);
  CHECK(doc.model() == before);

  const auto other_kind = doc.apply(CreateEdge{EdgeKind::DecompositionLink, v, p1, {}});
  CHECK(other_kind.cancelled());

  CHECK(doc.apply(CreateEdge{EdgeKind::AssociationLink, g1, v, {}}).applied());
  const NodeId g2 = make(doc, NodeKind::Goal, "G2");
  const auto argue = doc.apply(CreateEdge{EdgeKind::ArgumentationLink, g1, g2, {}});
  CHECK(argue.rejected());
  CHECK(argue.reason == Reason::IncompatibleEndpoints);
  const auto loop = doc.apply(CreateEdge{EdgeKind::DecompositionLink, g1, g1, {}});
  CHECK(loop.rejected());
  CHECK(loop.reason == Reason::SelfLoop);
  CHECK(doc.apply(CreateEdge{EdgeKind::DecompositionLink, g1, NodeId{999}, {}}).reason ==
        Reason::UnknownNode);
  CHECK(doc.apply(CreateEdge{EdgeKind::AssociationLink, g2, v, "help"}).reason ==
        Reason::LabelNotSupported);
  const NodeId o = make(doc, NodeKind::OperationalizingSoftgoal, "O");
  const auto labelled = doc.apply(CreateEdge{EdgeKind::ContributionLink, o, p1, "help"});
  REQUIRE(labelled.applied());
  CHECK(doc.model().edges.at(std::get<EdgeId>(labelled.created.at(0))).label == "help");
}

TEST_CASE("set_label") {
  Document doc;
  const NodeId g1 = make(doc, NodeKind::Goal, "G1");
  CHECK(doc.apply(SetLabel{g1, "Scalable ingestion"}).applied());
  CHECK(doc.model().nodes.at(g1).name == "Scalable ingestion");
  CHECK(doc.apply(SetLabel{g1, ""}).applied());
  CHECK(doc.model().nodes.at(g1).name == "");
  const auto missing = doc.apply(SetLabel{NodeId{77}, "x"});
  CHECK(missing.rejected());
  CHECK(missing.reason == Reason::UnknownElement);
  const NodeId v = make(doc, NodeKind::BigDataCharacteristic, "V");
  const EdgeId e = link(doc, EdgeKind::AssociationLink, g1, v);
  CHECK(doc.apply(SetLabel{e, "x"}).reason == Reason::LabelNotSupported);
}

TEST_CASE("reconnect_edge") {
  Document doc;
  const NodeId g1 = make(doc, NodeKind::Goal, "G1");
  const NodeId v = make(doc, NodeKind::BigDataCharacteristic, "V");
  const NodeId l = make(doc, NodeKind::NfrSoftgoal, "L");
  const NodeId p = make(doc, NodeKind::Permutation, "P");
  const EdgeId e = link(doc, EdgeKind::AssociationLink, g1, v);
  CHECK(doc.apply(ReconnectEdge{e, EdgeEnd::Target, l}).applied());
  CHECK(doc.model().edges.at(e).to == l);

  link(doc, EdgeKind::AssociationLink, g1, v);
  const Model before = doc.model();
  const auto dup = doc.apply(ReconnectEdge{e, EdgeEnd::Target, v});
  CHECK(dup.cancelled());
  CHECK(dup.reason == Reason::DuplicateEdge);
  CHECK(doc.model() == before);

  // Reconnecting onto the node it already points at is not a duplicate of itself.
  CHECK(doc.apply(ReconnectEdge{e, EdgeEnd::Target, l}).applied());

  const EdgeId pl = link(doc, EdgeKind::PermutationLink, l, p);
  const auto bad = doc.apply(ReconnectEdge{pl, EdgeEnd::Source, g1});
  CHECK(bad.rejected());
  CHECK(bad.reason == Reason::IncompatibleEndpoints);
  CHECK(doc.apply(ReconnectEdge{EdgeId{999}, EdgeEnd::Source, g1}).reason == Reason::UnknownElement);
}

TEST_CASE("delete cascades to attributes and incident links") {
  Document doc;
  const NodeId v = make(doc, NodeKind::BigDataCharacteristic, "V");
  const NodeId l = make(doc, NodeKind::NfrSoftgoal, "L");
  const NodeId p1 = make(doc, NodeKind::Permutation, "P1");
  const NodeId keep = make(doc, NodeKind::Goal, "G");
  doc.apply(AddPermutationAttribute{p1, "a", AttributeValueKind::Quantitative, "1"});
  doc.apply(AddPermutationAttribute{p1, "b", AttributeValueKind::Qualitative, {}});
  link(doc, EdgeKind::PermutationLink, v, p1);
  link(doc, EdgeKind::PermutationLink, l, p1);
  const EdgeId unrelated = link(doc, EdgeKind::AssociationLink, keep, v);
  REQUIRE(doc.model().nodes.size() == 6);

  // Oracle: everything owned by or touching p1, found by scanning.
  std::set<NodeId> doomed_nodes{p1};
  for (const auto& [id, n] : doc.model().nodes) {
    if (n.owner == p1) doomed_nodes.insert(id);
  }
  std::set<EdgeId> doomed_edges;
  for (const auto& [id, e] : doc.model().edges) {
    if (doomed_nodes.contains(e.from) || doomed_nodes.contains(e.to)) doomed_edges.insert(id);
  }
  CHECK(doomed_nodes.size() == 3);
  CHECK(doomed_edges.size() == 2);

  CHECK(doc.apply(DeleteElement{p1}).applied());
  for (NodeId id : doomed_nodes) {
    CHECK_FALSE(doc.model().nodes.contains(id));
    CHECK_FALSE(doc.model().geometry.contains(id));
  }
  for (EdgeId id : doomed_edges) CHECK_FALSE(doc.model().edges.contains(id));
  CHECK(doc.model().nodes.size() == 3);
  CHECK(doc.model().edges.contains(unrelated));
  CHECK(testing::referentially_intact(doc.model()));

  CHECK(doc.apply(DeleteElement{unrelated}).applied());
  CHECK(doc.model().nodes.size() == 3);
  CHECK(doc.apply(DeleteElement{NodeId{4242}}).reason == Reason::UnknownElement);
}

TEST_CASE("attribute slots grow the owner box") {
  Document doc;
  const NodeId p = make(doc, NodeKind::Permutation, "P");
  for (int i = 0; i < 5; ++i) {
    CHECK(doc.apply(AddPermutationAttribute{p, "a", AttributeValueKind::Qualitative, {}}).applied());
  }
  const Box owner = doc.model().geometry.at(p);
  const auto attrs = doc.model().attributes_of(p);
  REQUIRE(attrs.size() == 5);
  for (NodeId a : attrs) CHECK(strictly_contains(owner, doc.model().geometry.at(a)));
  CHECK(doc.apply(AddPermutationAttribute{NodeId{99}, "a", AttributeValueKind::Qualitative, {}})
            .rejected());
}

TEST_CASE("set_geometry") {
  Document doc;
  const NodeId g = make(doc, NodeKind::Goal, "G");
  CHECK(doc.apply(SetGeometry{g, Box{300, 200, 160, 70}}).applied());
  CHECK(doc.model().geometry.at(g) == Box{300, 200, 160, 70});
  CHECK(doc.apply(SetGeometry{g, Box{0, 0, -1, 10}}).reason == Reason::InvalidGeometry);
  CHECK(doc.apply(SetGeometry{NodeId{8}, Box{0, 0, 10, 10}}).reason == Reason::UnknownNode);
}

TEST_CASE("undo and redo") {
  Document doc;
  const auto fresh = doc.apply(Undo{});
  CHECK(fresh.rejected());
  CHECK(fresh.reason == Reason::NothingToUndo);
  CHECK(doc.apply(Redo{}).reason == Reason::NothingToRedo);

  const NodeId g = make(doc, NodeKind::Goal, "G");
  const auto undone = doc.apply(Undo{});
  CHECK(undone.applied());
  CHECK(undone.revision == 2);
  CHECK_FALSE(doc.model().nodes.contains(g));
  const auto redone = doc.apply(Redo{});
  CHECK(redone.applied());
  CHECK(redone.revision == 3);
  CHECK(doc.model().nodes.contains(g));

  // A new id is never a reused one, even after undo.
  doc.apply(Undo{});
  const NodeId g2 = make(doc, NodeKind::Goal, "G2");
  CHECK(g2 != g);
  CHECK_FALSE(doc.can_redo());
}

TEST_CASE("refused commands leave the model bit-identical") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    testing::Rng rng{testing::seed_for(i)};
    Document doc{testing::random_model(rng)};
    for (int step = 0; step < 60; ++step) {
      const Model before = doc.model();
      const std::uint64_t hash = model_hash(before);
      const auto outcome = doc.apply(testing::random_command(rng, doc.model()));
      if (!outcome.applied()) {
        CHECK(doc.model() == before);
        CHECK(model_hash(doc.model()) == hash);
      } else {
        CHECK(doc.model().revision == before.revision + 1);
        CHECK(outcome.revision == doc.model().revision);
      }
    }
  }
}

TEST_CASE("invariants hold after any command sequence") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    testing::Rng rng{testing::seed_for(1000 + i)};
    Document doc;
    for (int step = 0; step < 80; ++step) {
      doc.apply(testing::random_command(rng, doc.model()));
      const Model& m = doc.model();
      REQUIRE(testing::max_parallel_edges(m) <= 1);
      REQUIRE(testing::referentially_intact(m));
      for (const auto& [id, e] : m.edges) {
        REQUIRE(testing::reference_endpoint_allowed(to_string(e.kind), to_string(m.nodes.at(e.from).kind),
                                                    to_string(m.nodes.at(e.to).kind)));
        if (e.label) REQUIRE(e.kind == EdgeKind::ContributionLink);
      }
      for (const auto& [id, n] : m.nodes) {
        const bool attr = n.kind == NodeKind::PermutationAttribute;
        REQUIRE(n.owner.has_value() == attr);
        REQUIRE(n.attr_value_kind.has_value() == attr);
        if (attr) REQUIRE(m.nodes.at(*n.owner).kind == NodeKind::Permutation);
        REQUIRE(id.value < m.next_id);
      }
      for (const auto& [id, e] : m.edges) REQUIRE(id.value < m.next_id);
    }
  }
}

TEST_CASE("undoing a random 50-command script restores the initial model") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    testing::Rng rng{testing::seed_for(5000 + i)};
    const Model initial = testing::random_model(rng, {.max_nodes = 10});
    Document doc{initial};
    int applied = 0;
    for (int step = 0; step < 50; ++step) {
      EditCommand cmd = testing::random_command(rng, doc.model());
      if (std::holds_alternative<Undo>(cmd) || std::holds_alternative<Redo>(cmd)) continue;
      if (doc.apply(cmd).applied()) ++applied;
    }
    CHECK(doc.journal_size() == static_cast<std::size_t>(applied));
    for (int k = 0; k < applied; ++k) REQUIRE(doc.apply(Undo{}).applied());
    CHECK_FALSE(doc.can_undo());
    CHECK(content_equal(doc.model(), initial));
    CHECK(doc.model().revision == initial.revision + 2 * static_cast<std::uint64_t>(applied));
  }
}
