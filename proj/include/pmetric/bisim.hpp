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

#pragma once

#include <stdexcept>
#include <vector>

#include "pmetric/model.hpp"

namespace pmetric {

/// Disjoint, nonempty blocks covering all states. Blocks are ordered by their
/// lowest member and members are sorted.
class Partition {
 public:
  /// Throws std::invalid_argument unless `blocks` partitions {0..n-1}.
  Partition(std::size_t n, std::vector<std::vector<StateIndex>> blocks);

  std::size_t num_states() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<std::vector<StateIndex>>& blocks() const { return blocks_; }
  const std::vector<StateIndex>& block(std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(StateIndex s) const { return block_of_[s]; }
  bool same_block(StateIndex a, StateIndex b) const { return block_of_[a] == block_of_[b]; }

  static Partition singletons(std::size_t n);

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<StateIndex>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Coarsest probabilistic bisimulation, by iterated splitting on
/// block-summed transition masses starting from the live/stuck split.
Partition bisimilarity_partition(const Pts& pts);

/// Splits each block of `part` by block-summed masses once. Returns `part`
/// unchanged iff it is stable.
Partition refine_once(const Pts& pts, const Partition& part);

/// Raised by quotient() when the partition is not a bisimulation.
class NotABisimulation : public std::invalid_argument {
 public:
  NotABisimulation(StateIndex a, StateIndex b, std::size_t block, const std::string& what)
      : std::invalid_argument(what), a_(a), b_(b), block_(block) {}
  StateIndex first() const { return a_; }
  StateIndex second() const { return b_; }
  std::size_t target_block() const { return block_; }

 private:
  StateIndex a_, b_;
  std::size_t block_;
};

struct QuotientResult {
  Pts quotient;
  std::vector<std::size_t> projection;  // original state -> block index
};

/// Quotient system over the blocks of `part`: rows are block-summed rows of
/// the lowest-index member. Every member is checked to give the same row.
QuotientResult quotient(const Pts& pts, const Partition& part);

}  // namespace pmetric
