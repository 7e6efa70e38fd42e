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
#include <array>
#include <vector>

#include "qualibd/document.hpp"
#include "qualibd/export.hpp"

namespace qualibd {

namespace {

constexpr int kTierCount = 5;
constexpr double kMinOwnerWidth = 60;

std::size_t codepoints(std::string_view text) {
  return static_cast<std::size_t>(
      std::ranges::count_if(text, [](char c) { return (static_cast<unsigned char>(c) & 0xc0) != 0x80; }));
}

double width_for(const Node& node) {
  const double text = 7.0 * static_cast<double>(codepoints(node.name.value_or(""))) + 24.0;
  return std::max(kDefaultNodeWidth, text);
}

// Moves `box` right until it clears every obstacle.
Box clear_of(Box box, const std::vector<Box>& obstacles) {
  for (bool moved = true; moved;) {
    moved = false;
    for (const Box& other : obstacles) {
      if (overlaps(box, other)) {
        box.x = other.x + other.w + kSiblingSpacing;
        moved = true;
      }
    }
  }
  return box;
}

double height_for(const Model& model, const Node& node) {
  return node.kind == NodeKind::Permutation ? owner_height_for(model.attributes_of(node.id).size())
                                            : kDefaultNodeHeight;
}

}  // namespace

int tier_of(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Goal: return 0;
    case NodeKind::BigDataCharacteristic:
    case NodeKind::NfrSoftgoal: return 1;
    case NodeKind::Permutation:
    case NodeKind::PermutationAttribute: return 2;
    case NodeKind::OperationalizingSoftgoal: return 3;
    case NodeKind::ClaimSoftgoal: return 4;
  }
  return kTierCount - 1;
}

LayoutResult layout(const Model& model) {
  LayoutResult result;
  std::array<std::vector<const Node*>, kTierCount> tiers;
  std::vector<Box> obstacles;

  // Stored boxes first, in id order; one that collides with an earlier one is pushed right.
  for (const auto& [id, node] : model.nodes) {
    if (node.kind == NodeKind::PermutationAttribute) continue;
    result.tier[id] = tier_of(node.kind);
    if (auto it = model.geometry.find(id); it != model.geometry.end()) {
      Box box = it->second;
      if (node.kind == NodeKind::Permutation) {
        box.w = std::max(box.w, kMinOwnerWidth);
        box.h = std::max(box.h, height_for(model, node));
      }
      box = clear_of(box, obstacles);
      result.boxes[id] = box;
      obstacles.push_back(box);
    } else {
      tiers[static_cast<std::size_t>(tier_of(node.kind))].push_back(&node);
    }
  }

  double y = kLayoutMargin;
  for (const auto& row : tiers) {
    if (row.empty()) continue;
    double x = kLayoutMargin;
    double tallest = 0;
    for (const Node* node : row) {
      const double h = height_for(model, *node);
      const Box box = clear_of(Box{x, y, width_for(*node), h}, obstacles);
      result.boxes[node->id] = box;
      obstacles.push_back(box);
      x = box.x + box.w + kSiblingSpacing;
      tallest = std::max(tallest, h);
    }
    y += std::max(kTierSpacing, tallest + (kTierSpacing - kDefaultNodeHeight));
  }

  // Attributes sit inside their owner: a stored box is kept only if it still fits.
  for (const auto& [id, node] : model.nodes) {
    if (node.kind != NodeKind::PermutationAttribute || !node.owner) continue;
    result.tier[id] = tier_of(node.kind);
    auto owner = result.boxes.find(*node.owner);
    if (owner == result.boxes.end()) continue;
    if (auto it = model.geometry.find(id);
        it != model.geometry.end() && strictly_contains(owner->second, it->second)) {
      result.boxes[id] = it->second;
      continue;
    }
    const auto siblings = model.attributes_of(*node.owner);
    const auto index = static_cast<std::size_t>(std::ranges::find(siblings, id) - siblings.begin());
    result.boxes[id] = attribute_slot(owner->second, index);
  }
  return result;
}

}  // namespace qualibd
