// Copyright 2026 The pmetric Authors
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

#include "pmetric/bisim.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace pmetric {

namespace {

std::vector<Rational> block_masses(const Pts& pts, const Partition& part, StateIndex s) {
  std::vector<Rational> masses(part.num_blocks());
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (!pts.pi(s, t).is_zero()) masses[part.block_of(t)] += pts.pi(s, t);
  }
  return masses;
}

std::vector<std::vector<StateIndex>> normalized(std::vector<std::vector<StateIndex>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

}  // namespace

Partition::Partition(std::size_t n, std::vector<std::vector<StateIndex>> blocks) : block_of_(n, n) {
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
  }
  blocks_ = normalized(std::move(blocks));
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (StateIndex s : blocks_[k]) {
      if (s >= n) throw std::invalid_argument("partition mentions state " + std::to_string(s + 1) + " out of range");
      if (block_of_[s] != n) throw std::invalid_argument("state " + std::to_string(s + 1) + " is in two blocks");
      block_of_[s] = k;
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (block_of_[s] == n) throw std::invalid_argument("state " + std::to_string(s + 1) + " is in no block");
  }
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<StateIndex>> blocks(n);
  for (std::size_t s = 0; s < n; ++s) blocks[s] = {s};
  return Partition(n, std::move(blocks));
}

Partition refine_once(const Pts& pts, const Partition& part) {
  std::vector<std::vector<StateIndex>> next;
  for (const auto& block : part.blocks()) {
    std::map<std::vector<Rational>, std::vector<StateIndex>> groups;
    for (StateIndex s : block) {
      groups[block_masses(pts, part, s)].push_back(s);
    }
    for (auto& [sig, members] : groups) next.push_back(std::move(members));
  }
  return Partition(pts.size(), std::move(next));
}

Partition bisimilarity_partition(const Pts& pts) {
  std::vector<StateIndex> live, stuck;
  for (std::size_t s = 0; s < pts.size(); ++s) (pts.is_live(s) ? live : stuck).push_back(s);
  std::vector<std::vector<StateIndex>> initial;
  if (!live.empty()) initial.push_back(live);
  if (!stuck.empty()) initial.push_back(stuck);
  Partition part(pts.size(), std::move(initial));
  for (;;) {
    Partition next = refine_once(pts, part);
    if (next.num_blocks() == part.num_blocks()) return part;
    part = std::move(next);
  }
}

QuotientResult quotient(const Pts& pts, const Partition& part) {
  if (part.num_states() != pts.size()) throw std::invalid_argument("partition size does not match the system");
  const std::size_t k = part.num_blocks();
  RationalMatrix pi(k);
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < k; ++b) {
    const auto& members = part.block(b);
    const StateIndex rep = members.front();
    const auto row = block_masses(pts, part, rep);
    for (StateIndex s : members) {
      const auto other = block_masses(pts, part, s);
      for (std::size_t c = 0; c < k; ++c) {
        if (other[c] != row[c]) {
          throw NotABisimulation(rep, s, c,
                                 "not a bisimulation: " + pts.label(rep) + " and " + pts.label(s) +
                                     " send different mass to block " + std::to_string(c + 1) + " (" + row[c].str() +
                                     " vs " + other[c].str() + ")");
        }
      }
    }
    for (std::size_t c = 0; c < k; ++c) pi(b, c) = row[c];
    std::string name;
    for (StateIndex s : members) name += (name.empty() ? "" : "_") + pts.label(s);
    labels.push_back(std::move(name));
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    for (std::size_t b = 0; b < k; ++b) labels[b] = "b" + std::to_string(b + 1);
  }
  std::vector<std::size_t> projection(pts.size());
  for (std::size_t s = 0; s < pts.size(); ++s) projection[s] = part.block_of(s);
  return {Pts(std::move(pi), std::move(labels)), std::move(projection)};
}

}  // namespace pmetric
