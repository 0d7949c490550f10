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

#include "entwit/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace entwit {

Partition::Partition(int n_parties, std::vector<Block> blocks) : n_parties_(n_parties), blocks_(std::move(blocks)) {
  if (n_parties < 1) throw PartitionError("partition needs at least one party");
  std::vector<int> seen(n_parties, 0);
  for (auto& b : blocks_) {
    if (b.empty()) throw PartitionError("partition block is empty");
    std::sort(b.begin(), b.end());
    for (int p : b) {
      if (p < 0 || p >= n_parties) throw PartitionError("party index out of range in partition");
      if (seen[p]++) throw PartitionError("partition blocks are not disjoint");
    }
  }
  for (int p = 0; p < n_parties; ++p)
    if (!seen[p]) throw PartitionError("partition does not cover party " + std::to_string(p + 1));
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

Partition Partition::finest(int n_parties) {
  std::vector<Block> blocks;
  for (int p = 0; p < n_parties; ++p) blocks.push_back({p});
  return Partition(n_parties, std::move(blocks));
}

Partition Partition::coarsest(int n_parties) {
  Block all(n_parties);
  for (int p = 0; p < n_parties; ++p) all[p] = p;
  return Partition(n_parties, {all});
}

Partition Partition::parse(std::string_view text, int n_parties) {
  std::vector<Block> blocks;
  int largest = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    std::string_view chunk = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    Block block;
    std::size_t s = 0;
    while (s <= chunk.size()) {
      std::size_t comma = chunk.find(',', s);
      std::string_view tok = chunk.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value < 1)
        throw PartitionError("malformed partition text '" + std::string(text) + "'");
      block.push_back(value - 1);
      largest = std::max(largest, value);
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    blocks.push_back(std::move(block));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Partition(n_parties > 0 ? n_parties : largest, std::move(blocks));
}

int Partition::diameter() const {
  std::size_t d = 0;
  for (const auto& b : blocks_) d = std::max(d, b.size());
  return static_cast<int>(d);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.n_parties_ != n_parties_) throw PartitionError("refines: partitions of different party counts");
  std::vector<int> owner(n_parties_);
  for (std::size_t i = 0; i < coarser.blocks_.size(); ++i)
    for (int p : coarser.blocks_[i]) owner[p] = static_cast<int>(i);
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const Block& b) {
    return std::all_of(b.begin(), b.end(), [&](int p) { return owner[p] == owner[b.front()]; });
  });
}

std::string Partition::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << '|';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) os << ',';
      os << blocks_[i][j] + 1;
    }
  }
  return os.str();
}

std::vector<int> Partition::block_order() const {
  std::vector<int> order;
  for (const auto& b : blocks_) order.insert(order.end(), b.begin(), b.end());
  return order;
}

int diameter(const Partition& p) { return p.diameter(); }
bool refines(const Partition& p, const Partition& q) { return p.refines(q); }

std::vector<Partition> enumerate_partitions(int m, int k) {
  if (m < 1) throw PartitionError("enumerate_partitions: need m >= 1");
  if (k < 1 || k > m) throw PartitionError("enumerate_partitions: need 1 <= k <= m");

  // Restricted growth string: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<Partition> out;
  std::vector<int> label(m, 0);
  std::vector<int> count(m + 1, 0);

  auto recurse = [&](auto&& self, int i, int n_blocks) -> void {
    if (i == m) {
      std::vector<Partition::Block> blocks(n_blocks);
      for (int p = 0; p < m; ++p) blocks[label[p]].push_back(p);
      out.emplace_back(m, std::move(blocks));
      return;
    }
    for (int b = 0; b <= n_blocks && b < m; ++b) {
      if (count[b] >= k) continue;
      label[i] = b;
      ++count[b];
      self(self, i + 1, std::max(n_blocks, b + 1));
      --count[b];
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

std::vector<Partition> maximal_partitions(int m, int k) {
  auto all = enumerate_partitions(m, k);
  std::vector<Partition> out;
  for (const auto& p : all) {
    bool dominated = std::any_of(all.begin(), all.end(), [&](const Partition& q) { return q != p && p.refines(q); });
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace entwit
