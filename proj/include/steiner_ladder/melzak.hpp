#pragma once

#include <optional>
#include <vector>

#include "steiner_ladder/topology.hpp"
#include "steiner_ladder/tree.hpp"

namespace steiner_ladder::melzak {

struct SteinerSolution {
  EmbeddedTree best;
  /// Distinct trees whose length is within `optimality_gap_tol` of the best,
  /// sorted by length. Contains `best` first.
  std::vector<EmbeddedTree> co_optima;
  double optimality_gap_tol = 0.0;
};

/// Embeds a full topology with every Steiner angle equal to 2pi/3, or returns
/// nothing when no embedding with positive edges exists. If several merge
/// orientations succeed the shortest is returned.
std::optional<EmbeddedTree> realize_full_topology(const TerminalSet& terminals,
                                                  const topology::Topology& topo);

/// Exact Steiner minimal tree for 2..9 terminals. Every full subtree on every
/// terminal subset is realized, then the cheapest gluing of subtrees at shared
/// terminals is searched. `threads` = 0 uses the hardware concurrency.
SteinerSolution solve_exact(const TerminalSet& terminals, double tol = 1e-9, int threads = 0);

/// Minimum spanning tree of the complete Euclidean graph (Prim).
EmbeddedTree minimum_spanning_tree(const TerminalSet& terminals);

/// Steiner minimal tree length divided by minimum spanning tree length.
double steiner_ratio(const TerminalSet& terminals);

}  // namespace steiner_ladder::melzak
