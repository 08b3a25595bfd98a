#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace steiner_ladder::topology {

/// Abstract tree. Vertices 0..n_terminals-1 are terminals, the next
/// n_steiner are Steiner labels.
struct Topology {
  int n_terminals = 0;
  int n_steiner = 0;
  std::vector<std::pair<int, int>> edges;

  bool operator==(const Topology&) const = default;
  auto operator<=>(const Topology&) const = default;

  /// Renumbers Steiner labels in BFS order from terminal 0 and sorts edges.
  Topology canonical() const;
  /// True when acyclic, connected, terminals of degree 1, Steiner points of degree 3.
  bool is_full() const;
};

using Mask = std::uint32_t;

/// Terminal subsets as bitmasks, each of size >= 2.
struct BlockDecomposition {
  std::vector<Mask> blocks;
  bool operator==(const BlockDecomposition&) const = default;
  auto operator<=>(const BlockDecomposition&) const = default;
};

/// Number of full topologies on n terminals, (2n-4)! / (2^(n-2) (n-2)!).
std::uint64_t count_full_topologies(int n);

/// All full topologies on n terminals (3 <= n <= 9), canonical and sorted.
std::vector<Topology> enumerate_full_topologies(int n);

/// Checks the gluing invariants: every block has >= 2 members, pairwise
/// intersections have at most one member, the blocks cover {0..n-1}, the
/// sizes satisfy sum(|B|-1) = n-1 and the union is connected.
bool is_block_decomposition(const BlockDecomposition& d, int n);

/// Calls `visit` once for every block decomposition of {0..n-1} whose blocks
/// have at least `min_block` members. Blocks are listed in discovery order.
void for_each_block_decomposition(int n, int min_block,
                                  const std::function<void(const std::vector<Mask>&)>& visit);

/// All block decompositions, each with sorted blocks, in sorted order.
std::vector<BlockDecomposition> enumerate_block_decompositions(int n, int min_block = 2);

inline int popcount(Mask m) { return std::popcount(m); }

}  // namespace steiner_ladder::topology
