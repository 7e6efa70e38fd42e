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

#include "qualibd/model.hpp"

using namespace qualibd;

TEST_CASE("id text form") {
  CHECK(to_string(NodeId{7}) == "n7");
  CHECK(to_string(EdgeId{12}) == "e12");
  CHECK(parse_node_id("n7") == NodeId{7});
  CHECK(parse_edge_id("e12") == EdgeId{12});
  CHECK_FALSE(parse_node_id("e7").has_value());
  CHECK_FALSE(parse_node_id("n07").has_value());
  CHECK_FALSE(parse_node_id("n").has_value());
  CHECK_FALSE(parse_node_id("n-1").has_value());
  CHECK_FALSE(parse_node_id("n99999999999999999999999").has_value());
  CHECK(parse_element_id("e3") == ElementId{EdgeId{3}});
  CHECK(to_string(TargetId{ModelId{"m1"}}) == "m1");
}

TEST_CASE("box overlap is interior-only") {
  const Box a{0, 0, 10, 10};
  CHECK(overlaps(a, Box{5, 5, 10, 10}));
  CHECK_FALSE(overlaps(a, Box{10, 0, 10, 10}));
  CHECK_FALSE(overlaps(a, Box{0, 10, 10, 10}));
  CHECK(strictly_contains(a, Box{1, 1, 8, 8}));
  CHECK_FALSE(strictly_contains(a, Box{0, 1, 8, 8}));
}

TEST_CASE("slugify") {
  CHECK(slugify("Velocity x Latency") == "velocity-x-latency");
  CHECK(slugify("  --Hello__World!! ") == "hello-world");
  CHECK_FALSE(slugify("\xe6\xb5\x81").empty());
}

TEST_CASE("queries and hashing") {
  Model m;
  m.nodes[NodeId{1}] = Node{NodeId{1}, NodeKind::Goal, "G", {}, {}, {}};
  m.nodes[NodeId{2}] = Node{NodeId{2}, NodeKind::NfrSoftgoal, "L", {}, {}, {}};
  m.nodes[NodeId{3}] = Node{NodeId{3}, NodeKind::Permutation, "P", {}, {}, {}};
  m.nodes[NodeId{4}] = Node{NodeId{4}, NodeKind::PermutationAttribute, "a", NodeId{3},
                            AttributeValueKind::Qualitative, {}};
  m.edges[EdgeId{5}] = Edge{EdgeId{5}, EdgeKind::AssociationLink, NodeId{1}, NodeId{2}, {}};
  CHECK(m.find_connection(NodeId{1}, NodeId{2}) == EdgeId{5});
  CHECK_FALSE(m.find_connection(NodeId{2}, NodeId{1}).has_value());
  CHECK(m.attributes_of(NodeId{3}) == std::vector<NodeId>{NodeId{4}});
  CHECK(m.incident_edges(NodeId{2}) == std::vector<EdgeId>{EdgeId{5}});
  CHECK(m.contains(ElementId{EdgeId{5}}));
  CHECK_FALSE(m.contains(ElementId{NodeId{5}}));

  Model copy = m;
  CHECK(model_hash(copy) == model_hash(m));
  copy.revision = 9;
  CHECK(content_equal(copy, m));
  copy.nodes.at(NodeId{1}).name = "G2";
  CHECK_FALSE(content_equal(copy, m));
  CHECK(model_hash(copy) != model_hash(m));
}
