#include "steiner_ladder/ladder.hpp"

#include <algorithm>
#include <complex>
#include <set>

#include "steiner_ladder/analysis.hpp"
#include "steiner_ladder/melzak.hpp"

namespace steiner_ladder::ladder {

namespace {

void check_hypotheses(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha < kPi / 6.0))
    throw HypothesisViolation("alpha must lie in (0, pi/6)");
  if (!(lambda > 0.0 && lambda <= 0.5)) throw HypothesisViolation("lambda must lie in (0, 1/2]");
  if (!condition_holds(alpha, lambda))
    throw HypothesisViolation("sqrt(lambda) < cos(pi/3 + alpha) / cos(pi/3 - alpha) fails");
}

const std::complex<double> kTurn = std::polar(1.0, kPi / 6.0);

// Splits "A12" into ('A', 12); returns k = 0 for other labels.
std::pair<char, int> side_label(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'A' && s[0] != 'B')) return {0, 0};
  int k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return {0, 0};
    k = 10 * k + (s[i] - '0');
  }
  return {s[0], k};
}

}  // namespace

void LadderParams::validate() const {
  check_hypotheses(alpha, lambda);
  if (depth < 1) throw OutOfRange("depth must be >= 1");
}

bool condition_holds(double alpha, double lambda) {
  if (!(lambda > 0.0)) return false;
  return std::sqrt(lambda) < std::cos(kPi / 3.0 + alpha) / std::cos(kPi / 3.0 - alpha);
}

bool appendix_predicate(double alpha, double lambda) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  return c / lambda - s / (kSqrt3 * lambda) - c >= kSqrt3 * s / (1.0 - lambda);
}

Point a_point(double alpha, double lambda, int k) {
  const double r = std::pow(lambda, k - 1);
  return {r * std::cos(alpha), r * std::sin(alpha)};
}

Point b_point(double alpha, double lambda, int k) {
  const Point a = a_point(alpha, lambda, k);
  return {a.x, -a.y};
}

double segment_distance(double alpha, double lambda) {
  return 1.0 / lambda - std::tan(alpha) / (kSqrt3 * lambda);
}

TerminalSet build_input(const LadderParams& params, Family family) {
  params.validate();
  const double al = params.alpha, la = params.lambda;
  TerminalSet ts;
  if (family == Family::A0) {
    const double r = segment_distance(al, la);
    ts.terminals.push_back({"A0", {r * std::cos(al), r * std::sin(al)}});
    ts.terminals.push_back({"B0", {r * std::cos(al), -r * std::sin(al)}});
    ts.segment = {0, 1};
  }
  for (int k = 1; k <= params.depth; ++k) ts.terminals.push_back({"A" + std::to_string(k), a_point(al, la, k)});
  for (int k = 1; k <= params.depth; ++k) ts.terminals.push_back({"B" + std::to_string(k), b_point(al, la, k)});
  ts.terminals.push_back({kApexLabel, {0.0, 0.0}});
  ts.family = FamilyDescriptor{family, al, la, params.depth};
  return ts;
}

double closed_form_length_A1(double alpha, double lambda) {
  check_hypotheses(alpha, lambda);
  const double s = std::sin(alpha);
  const double l2 = 1.0 - lambda * lambda;
  const std::complex<double> z = std::cos(alpha) + kSqrt3 * s + (2.0 * lambda / l2) * s * kTurn +
                                 (2.0 * lambda * lambda / l2) * s * std::conj(kTurn);
  return std::abs(z);
}

double closed_form_length_A0(double alpha, double lambda) {
  check_hypotheses(alpha, lambda);
  const double c = std::cos(alpha), s = std::sin(alpha);
  return c / lambda - s / (kSqrt3 * lambda) + kSqrt3 * s / (1.0 - lambda);
}

Point x_point(double alpha, double lambda, TreeSide side) {
  check_hypotheses(alpha, lambda);
  const double off = std::sin(alpha) / (1.0 + lambda);
  return {segment_distance(alpha, lambda) * std::cos(alpha), side == TreeSide::upper ? off : -off};
}

MirrorWord parse_word(const std::string& s) {
  MirrorWord w;
  for (char c : s) {
    if (c != '0' && c != '1') throw OutOfRange("mirror word must consist of 0 and 1");
    w.push_back(c == '1');
  }
  return w;
}

std::string word_string(const MirrorWord& w) {
  std::string s;
  for (bool b : w) s.push_back(b ? '1' : '0');
  return s;
}

int block_count(int depth) { return depth >= 1 ? (depth - 1) / 2 : 0; }

EmbeddedTree build_ladder_tree_A1(const LadderParams& params, const MirrorWord& word) {
  params.validate();
  if (params.depth < 3) throw OutOfRange("A1 tree needs depth >= 3");
  const int m = block_count(params.depth);
  if (static_cast<int>(word.size()) != m)
    throw OutOfRange("mirror word needs " + std::to_string(m) + " bits");
  const double al = params.alpha, la = params.lambda;
  TerminalSet five;
  for (const char* l : {"A1", "A2", "A3", "B1", "B2"}) {
    const auto [side, k] = side_label(l);
    five.terminals.push_back({l, side == 'A' ? a_point(al, la, k) : b_point(al, la, k)});
  }
  const EmbeddedTree block = melzak::solve_exact(five).best;
  if (analysis::classify(block) != analysis::Classification::full)
    throw HypothesisViolation("the 5-terminal block is not a full tree at these parameters");

  EmbeddedTree out;
  for (int j = 1; j <= m; ++j) {
    const double f = std::pow(la, 2 * (j - 1));
    const bool mirror = word[j - 1];
    EmbeddedTree piece;
    int sid = 0;
    for (const auto& v : block.vertices) {
      Point p = v.pos * f;
      if (mirror) p.y = -p.y;
      std::string label;
      if (v.role == Role::terminal) {
        auto [side, k] = side_label(v.label);
        if (mirror) side = side == 'A' ? 'B' : 'A';
        label = std::string(1, side) + std::to_string(k + 2 * (j - 1));
      } else {
        label = "s" + std::to_string(j) + "_" + std::to_string(++sid);
      }
      piece.add_vertex(p, v.role, label);
    }
    piece.edges = block.edges;
    glue_by_label(out, piece);
  }
  return out;
}

EmbeddedTree build_ladder_tree_A0(const LadderParams& params, TreeSide side) {
  params.validate();
  const double al = params.alpha, la = params.lambda;
  const double sa = std::sin(al), ca = std::cos(al);
  EmbeddedTree t;
  const double sigma = side == TreeSide::upper ? 1.0 : -1.0;
  // incoming height at level k is sigma (-lambda)^(k-1) sin(alpha) / (1 + lambda);
  // evaluated directly rather than by subtraction to keep deep levels exact
  auto height = [&](int k) { return sigma * std::pow(-la, k - 1) * sa / (1.0 + la); };
  int prev = t.add_vertex(x_point(al, la, side), Role::terminal, "x");
  // A leftward horizontal ray at height y enters rhombus k through the side
  // facing the segment, branches towards the nearer corner, crosses to the
  // opposite side and leaves at height y -+ s.
  auto entry = [&](double c, double s, double h) {
    return Point{c + (s - std::abs(h)) / kSqrt3, h};
  };
  for (int k = 1; k <= params.depth; ++k) {
    const double r = std::pow(la, k - 1);
    const double c = r * ca, s = r * sa;
    const double y = height(k);
    const double sg = y > 0.0 ? 1.0 : -1.0;
    const Point S = entry(c, s, y);
    const Point T{c - std::abs(y) / kSqrt3, height(k + 1)};
    const int near_corner = t.add_vertex(sg > 0 ? a_point(al, la, k) : b_point(al, la, k), Role::terminal,
                                         (sg > 0 ? "A" : "B") + std::to_string(k));
    const int far_corner = t.add_vertex(sg > 0 ? b_point(al, la, k) : a_point(al, la, k), Role::terminal,
                                        (sg > 0 ? "B" : "A") + std::to_string(k));
    const int si = t.add_vertex(S, Role::steiner, "S" + std::to_string(k));
    const int ti = t.add_vertex(T, Role::steiner, "T" + std::to_string(k));
    t.add_edge(prev, si);
    t.add_edge(si, near_corner);
    t.add_edge(si, ti);
    t.add_edge(ti, far_corner);
    prev = ti;
  }
  const double r = std::pow(la, params.depth);
  const int cut = t.add_vertex(entry(r * ca, r * sa, height(params.depth + 1)), Role::terminal, kCutLabel);
  t.add_edge(prev, cut);
  return t;
}

double length_by_J(double alpha, double lambda, const std::vector<int>& J, int K) {
  if (K < 0) throw OutOfRange("length_by_J: K must be >= 0");
  std::set<int> in;
  for (int j : J) {
    if (j < 1 || j > K) throw OutOfRange("length_by_J: index outside 1..K");
    in.insert(j);
  }
  double a = 0.0, b = 0.0;
  for (int j = 1; j <= K; ++j) (in.count(j) ? a : b) += std::pow(lambda, j);
  const double s = std::sin(alpha);
  a *= 2.0 * s;
  b *= 2.0 * s;
  return std::abs(std::cos(alpha) + kSqrt3 * s + a * kTurn + b * std::conj(kTurn));
}

double tail_bound(double lambda, int depth, double length) { return std::pow(lambda, depth - 1) * length; }

EmbeddedTree homothety(const EmbeddedTree& tree, double ratio, Point center) {
  EmbeddedTree out = tree;
  for (auto& v : out.vertices) v.pos = center + (v.pos - center) * ratio;
  return out;
}

double self_similarity_defect(const EmbeddedTree& tree, double ratio, Point center, double min_radius,
                              int samples_per_edge) {
  const EmbeddedTree scaled = homothety(tree, ratio, center);
  double worst = 0.0;
  const int ns = std::max(samples_per_edge, 1);
  for (auto [a, b] : scaled.edges) {
    const Point p = scaled.vertices[a].pos, q = scaled.vertices[b].pos;
    for (int i = 0; i <= ns; ++i) {
      const Point s = p + (q - p) * (static_cast<double>(i) / ns);
      if (distance(s, center) < min_radius) continue;
      worst = std::max(worst, analysis::distance_to_tree(s, tree));
    }
  }
  return worst;
}

}  // namespace steiner_ladder::ladder
