#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steiner_ladder/geom.hpp"

namespace steiner_ladder {

/// Label of the degree-1 pseudo-terminal that closes a truncated tree.
inline const std::string kCutLabel = "cut";

struct Terminal {
  std::string label;
  Point pos;
};

enum class Family { A1, A0 };

/// Parameters that regenerate a terminal set from the angle construction.
struct FamilyDescriptor {
  Family family = Family::A1;
  double alpha = 0.0;
  double lambda = 0.0;
  int depth = 0;
};

struct TerminalSet {
  std::vector<Terminal> terminals;
  std::optional<FamilyDescriptor> family;
  /// Indices of two terminals standing for the endpoints of a terminal segment.
  std::optional<std::pair<int, int>> segment;

  std::size_t size() const { return terminals.size(); }
  std::vector<Point> points() const;
  /// Index of the terminal with `label`, or -1.
  int find(const std::string& label) const;
  /// Subset picked by labels, in the given order. Throws OutOfRange on unknown label.
  TerminalSet subset(const std::vector<std::string>& labels) const;
};

enum class Role { terminal, steiner };

struct Vertex {
  Point pos;
  Role role = Role::steiner;
  std::string label;
};

/// Straight-line embedding of a tree. Edges index into `vertices`.
struct EmbeddedTree {
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;

  double length() const;
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
  int add_vertex(Point p, Role role, std::string label = {});
  void add_edge(int a, int b) { edges.emplace_back(a, b); }
  /// Index of the vertex with `label`, or -1.
  int find(const std::string& label) const;
  /// Largest distance between two vertices.
  double diameter() const;
  bool connected() const;
  bool acyclic() const;
};

/// Merge `part` into `into`, identifying terminal vertices with equal labels.
void glue_by_label(EmbeddedTree& into, const EmbeddedTree& part);

/// Symmetric Hausdorff distance between the vertex sets of two trees.
double vertex_hausdorff(const EmbeddedTree& a, const EmbeddedTree& b);

}  // namespace steiner_ladder
