#pragma once

#include <string>
#include <vector>

#include "steiner_ladder/tree.hpp"

namespace steiner_ladder::ladder {

/// Label of the angle apex.
inline const std::string kApexLabel = "Ainf";

/// Half-angle `alpha` between the bisector (positive x-axis) and each side,
/// ratio `lambda` between consecutive terminals, truncation depth.
struct LadderParams {
  double alpha = kPi / 36.0;
  double lambda = 0.5;
  int depth = 5;

  /// Throws HypothesisViolation unless 0 < alpha < pi/6, 0 < lambda <= 1/2 and
  /// condition_holds; throws OutOfRange for depth < 1.
  void validate() const;
};

enum class TreeSide { upper, lower };

/// sqrt(lambda) < cos(pi/3 + alpha) / cos(pi/3 - alpha).
bool condition_holds(double alpha, double lambda);

/// cos(a)/l - sin(a)/(sqrt3 l) - cos(a) >= sqrt3 sin(a) / (1 - l).
bool appendix_predicate(double alpha, double lambda);

/// Terminal on the upper side at distance lambda^(k-1) from the apex.
Point a_point(double alpha, double lambda, int k);
/// Mirror image of a_point.
Point b_point(double alpha, double lambda, int k);
/// Distance from the apex to the ends of the terminal segment of the A0 family.
double segment_distance(double alpha, double lambda);

/// Terminals A1..AK, B1..BK and the apex. The A0 family starts with the
/// segment endpoints A0, B0 and records them as the terminal segment.
TerminalSet build_input(const LadderParams& params, Family family);

/// Infinite-tree length for the A1 family.
double closed_form_length_A1(double alpha, double lambda);
/// Infinite-tree length for the A0 family.
double closed_form_length_A0(double alpha, double lambda);

/// Point where the A0 tree meets the terminal segment, offset from the
/// segment midpoint by sin(alpha)/(1+lambda) towards A0 (upper) or B0 (lower).
Point x_point(double alpha, double lambda, TreeSide side);

/// One bit per 5-terminal block; a set bit mirrors the block across the bisector.
using MirrorWord = std::vector<bool>;

/// Parses a string of '0'/'1'. Throws OutOfRange on other characters.
MirrorWord parse_word(const std::string& s);
std::string word_string(const MirrorWord& w);

/// Number of 5-terminal blocks in a depth-K A1 tree, (K-1)/2 rounded down.
int block_count(int depth);

/// Union of 5-terminal full blocks, block j scaled by lambda^(2(j-1)) and
/// mirrored when bit j-1 is set. Consecutive blocks share one terminal.
EmbeddedTree build_ladder_tree_A1(const LadderParams& params, const MirrorWord& word);

/// Indecomposable full tree from x_point through K rhombus levels, ended by a
/// pseudo-terminal labelled kCutLabel.
EmbeddedTree build_ladder_tree_A0(const LadderParams& params, TreeSide side);

/// |cos a + sqrt3 sin a + p e^{i pi/6} + q e^{-i pi/6}| with
/// p = 2 sin a sum_{j in J} l^j and q the same sum over {1..K} minus J.
double length_by_J(double alpha, double lambda, const std::vector<int>& J, int K);

/// lambda^(K-1) * length, the allowance for truncating an infinite tree at depth K.
double tail_bound(double lambda, int depth, double length);

EmbeddedTree homothety(const EmbeddedTree& tree, double ratio, Point center = {});

/// Largest distance from points of the scaled tree to the original tree.
/// Edges are sampled; samples closer than `min_radius` to `center` are skipped.
double self_similarity_defect(const EmbeddedTree& tree, double ratio, Point center = {},
                              double min_radius = 0.0, int samples_per_edge = 16);

}  // namespace steiner_ladder::ladder
