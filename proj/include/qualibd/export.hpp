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

#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "qualibd/model.hpp"

namespace qualibd {

inline constexpr double kLayoutMargin = 40;
inline constexpr double kTierSpacing = 140;
inline constexpr double kSiblingSpacing = 40;

struct LayoutResult {
  std::map<NodeId, Box> boxes;
  std::map<NodeId, int> tier;
};

/// Tier of a kind in the concept flow: goals 0, characteristics and quality
/// softgoals 1, permutations 2, operationalizations 3, claims 4. Attributes
/// share their owner's tier.
int tier_of(NodeKind kind) noexcept;

/// Deterministic tiered layout. Rows are laid out top to bottom, nodes left
/// to right in id order. Stored geometry wins over the computed slot, and
/// computed boxes step right past any stored box they would overlap.
LayoutResult layout(const Model& model);

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graphviz digraph. Attributes are folded into their permutation's label.
std::string to_dot(const Model& model);

/// Standalone SVG 1.1 document. Throws RenderError when `layout` misses a node.
std::string to_svg(const Model& model, const LayoutResult& layout);

}  // namespace qualibd
