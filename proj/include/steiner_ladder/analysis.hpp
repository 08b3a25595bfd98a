#pragma once

#include <map>
#include <vector>

#include "steiner_ladder/tree.hpp"

namespace steiner_ladder::analysis {

struct MaxwellResult {
  double length = 0.0;
  /// Absolute value of the imaginary part of the sum.
  double residual = 0.0;
};

enum class Classification { full, full_star, neither };

const char* to_string(Classification c);

/// Undirected edge directions, angles in [0, pi), clustered.
struct WindRose {
  std::vector<double> directions;
};

/// Length of a tree whose angles are all 2pi/3, evaluated from its vertices of
/// degree 1 and 2 only. Throws DegenerateInput when the tree is not full*.
MaxwellResult maxwell_length(const EmbeddedTree& tree);

WindRose wind_rose(const EmbeddedTree& tree, double tol = 1e-6);

/// full: every angle is 2pi/3 and every terminal has degree 1.
/// full_star: every angle is 2pi/3, terminals may have degree 2 or 3.
Classification classify(const EmbeddedTree& tree, double angle_tol = 1e-9);

struct ValidityReport {
  bool connected = false;
  bool acyclic = false;
  /// Largest amount by which an angle at a vertex falls short of 2pi/3.
  double max_angle_violation = 0.0;
  /// Steiner vertices whose degree is not 3.
  int bad_steiner_degrees = 0;
  std::map<int, int> degree_histogram;
  bool inside_hull = false;
  /// Terminal vertices matching neither a terminal (label and position) nor a
  /// point of the terminal segment. The truncation pseudo-terminal is exempt.
  int unknown_terminals = 0;

  bool ok(double angle_tol = 1e-9) const {
    return connected && acyclic && max_angle_violation <= angle_tol && bad_steiner_degrees == 0 &&
           inside_hull && unknown_terminals == 0;
  }
};

ValidityReport validate_steiner_geometry(const EmbeddedTree& tree, const TerminalSet& terminals);

/// Largest norm, over Steiner vertices, of the sum of unit vectors along the
/// incident edges. This is the gradient of the length in that vertex.
double local_min_gradient(const EmbeddedTree& tree);

/// True when some terminal has degree >= 2.
bool is_decomposable(const EmbeddedTree& tree);

/// Splits at every terminal of degree >= 2. Shared terminals are copied into
/// each piece.
std::vector<EmbeddedTree> block_decompose(const EmbeddedTree& tree);

/// Copy of `tree` reflected across the line through `on_axis` along `dir`.
EmbeddedTree reflected(const EmbeddedTree& tree, Point on_axis, Point dir);

/// True when the vertices of `a` and `b` can be matched one to one within
/// `tol`, with equal roles, and the matching carries edges onto edges.
bool trees_equal(const EmbeddedTree& a, const EmbeddedTree& b, double tol);

/// trees_equal applied to the reflection of `a`.
bool trees_mirror_equal(const EmbeddedTree& a, const EmbeddedTree& b, Point on_axis, Point dir,
                        double tol);

/// Distance from `p` to the union of the tree's edges.
double distance_to_tree(const Point& p, const EmbeddedTree& tree);

/// Convex hull, counter-clockwise, without collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts);

}  // namespace steiner_ladder::analysis
