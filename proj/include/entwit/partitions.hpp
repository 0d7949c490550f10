// Copyright 2026 The entwit Authors
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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entwit {

class PartitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A set partition of the parties {0, ..., n_parties - 1} into nonempty
/// blocks. Always held in canonical form: each block sorted ascending, blocks
/// ordered by their least element, so structural equality is set equality.
class Partition {
 public:
  using Block = std::vector<int>;

  Partition() = default;
  Partition(int n_parties, std::vector<Block> blocks);

  /// Every party in its own block.
  static Partition finest(int n_parties);
  /// A single block holding every party.
  static Partition coarsest(int n_parties);
  /// Parses the 1-based text form "1|2,3" (comma inside a block, pipe
  /// between blocks). `n_parties` defaults to the largest index seen.
  static Partition parse(std::string_view text, int n_parties = 0);

  int n_parties() const { return n_parties_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  /// Largest block size.
  int diameter() const;

  /// True iff every block of *this lies inside some block of `coarser`.
  bool refines(const Partition& coarser) const;

  /// 1-based text form, inverse of parse().
  std::string to_string() const;

  /// Parties listed block by block; the ordering that makes blocks
  /// contiguous tensor factors.
  std::vector<int> block_order() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int n_parties_ = 0;
  std::vector<Block> blocks_;
};

int diameter(const Partition& p);
bool refines(const Partition& p, const Partition& q);

/// All partitions of m parties whose blocks have at most k members, in
/// restricted-growth-string order. Throws PartitionError unless 1 <= k <= m.
std::vector<Partition> enumerate_partitions(int m, int k);

/// The members of enumerate_partitions(m, k) that are not a strict refinement
/// of another member.
std::vector<Partition> maximal_partitions(int m, int k);

}  // namespace entwit
