#include "steiner_ladder/analysis.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <set>

namespace steiner_ladder::analysis {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::full: return "full";
    case Classification::full_star: return "full*";
    case Classification::neither: return "neither";
  }
  return "neither";
}

namespace {

// Smallest pairwise angle between edges at each vertex, pi for degree < 2.
std::vector<double> min_angles(const EmbeddedTree& tree, const std::vector<std::vector<int>>& adj) {
  std::vector<double> out(tree.vertices.size(), kPi);
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t i = 0; i < adj[v].size(); ++i)
      for (std::size_t j = i + 1; j < adj[v].size(); ++j)
        out[v] = std::min(out[v], angle_at(tree.vertices[v].pos, tree.vertices[adj[v][i]].pos,
                                           tree.vertices[adj[v][j]].pos));
  return out;
}

}  // namespace

Classification classify(const EmbeddedTree& tree, double angle_tol) {
  const auto adj = tree.adjacency();
  bool degree_two = false;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const int d = static_cast<int>(adj[v].size());
    const bool term = tree.vertices[v].role == Role::terminal;
    if (d > 3 || (!term && d != 3)) return Classification::neither;
    if (term && d >= 2) degree_two = true;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const double a = angle_at(tree.vertices[v].pos, tree.vertices[adj[v][i]].pos,
                                  tree.vertices[adj[v][j]].pos);
        if (std::abs(a - kTwoThirdsPi) > angle_tol) return Classification::neither;
      }
  }
  if (!tree.connected() || !tree.acyclic()) return Classification::neither;
  return degree_two ? Classification::full_star : Classification::full;
}

MaxwellResult maxwell_length(const EmbeddedTree& tree) {
  if (classify(tree) == Classification::neither)
    throw DegenerateInput("maxwell_length: tree is not full*");
  const auto adj = tree.adjacency();
  std::complex<double> sum = 0.0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (adj[v].size() >= 3 || adj[v].empty()) continue;
    const Point p = tree.vertices[v].pos;
    Point c;
    for (int w : adj[v]) c -= unit(tree.vertices[w].pos - p);
    c = unit(c);
    sum += std::conj(c.complex()) * p.complex();
  }
  return {sum.real(), std::abs(sum.imag())};
}

WindRose wind_rose(const EmbeddedTree& tree, double tol) {
  std::vector<double> ang;
  for (auto [a, b] : tree.edges) {
    const Point d = tree.vertices[b].pos - tree.vertices[a].pos;
    if (d.norm2() == 0.0) continue;
    double t = std::atan2(d.y, d.x);
    t = std::fmod(t + 2.0 * kPi, kPi);
    ang.push_back(t);
  }
  std::sort(ang.begin(), ang.end());
  WindRose rose;
  for (double t : ang)
    if (rose.directions.empty() || t - rose.directions.back() > tol) rose.directions.push_back(t);
  // angles near pi wrap onto 0
  if (rose.directions.size() > 1 && rose.directions.front() + kPi - rose.directions.back() <= tol)
    rose.directions.pop_back();
  return rose;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

ValidityReport validate_steiner_geometry(const EmbeddedTree& tree, const TerminalSet& terminals) {
  ValidityReport r;
  r.connected = tree.connected();
  r.acyclic = tree.acyclic();
  const auto adj = tree.adjacency();
  const auto mins = min_angles(tree, adj);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const int d = static_cast<int>(adj[v].size());
    ++r.degree_histogram[d];
    if (tree.vertices[v].role == Role::steiner && d != 3) ++r.bad_steiner_degrees;
    if (d >= 2) r.max_angle_violation = std::max(r.max_angle_violation, kTwoThirdsPi - mins[v]);
  }
  const auto pts = terminals.points();
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  const double tol = 1e-9 * std::max(scale, 1.0);
  const auto hull = convex_hull(pts);
  auto inside = [&](const Point& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return distance(p, hull[0]) <= tol;
    if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]) <= tol;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point a = hull[i], b = hull[(i + 1) % hull.size()];
      if (cross(b - a, p - a) / distance(a, b) < -tol) return false;
    }
    return true;
  };
  r.inside_hull = true;
  for (const auto& v : tree.vertices) {
    if (!inside(v.pos)) r.inside_hull = false;
    if (v.role != Role::terminal || v.label == kCutLabel) continue;
    const int i = terminals.find(v.label);
    if (i >= 0 && distance(terminals.terminals[i].pos, v.pos) <= tol) continue;
    if (terminals.segment) {
      const Point a = terminals.terminals[terminals.segment->first].pos;
      const Point b = terminals.terminals[terminals.segment->second].pos;
      if (point_segment_distance(v.pos, a, b) <= tol) continue;
    }
    ++r.unknown_terminals;
  }
  return r;
}

double local_min_gradient(const EmbeddedTree& tree) {
  const auto adj = tree.adjacency();
  double worst = 0.0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (tree.vertices[v].role != Role::steiner) continue;
    Point g;
    for (int w : adj[v]) g += unit(tree.vertices[w].pos - tree.vertices[v].pos);
    worst = std::max(worst, g.norm());
  }
  return worst;
}

bool is_decomposable(const EmbeddedTree& tree) {
  const auto deg = tree.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (tree.vertices[v].role == Role::terminal && deg[v] >= 2) return true;
  return false;
}

std::vector<EmbeddedTree> block_decompose(const EmbeddedTree& tree) {
  const auto deg = tree.degrees();
  const std::size_t m = tree.edges.size();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // edges meeting at a vertex that is not a splitting terminal share a piece
  std::vector<int> first_edge(tree.vertices.size(), -1);
  for (std::size_t e = 0; e < m; ++e)
    for (int v : {tree.edges[e].first, tree.edges[e].second}) {
      const bool split = tree.vertices[v].role == Role::terminal && deg[v] >= 2;
      if (split) continue;
      if (first_edge[v] < 0) first_edge[v] = static_cast<int>(e);
      else parent[root(static_cast<int>(e))] = root(first_edge[v]);
    }
  std::vector<int> piece_of_root(m, -1);
  std::vector<EmbeddedTree> pieces;
  std::vector<std::vector<int>> local;
  for (std::size_t e = 0; e < m; ++e) {
    const int r = root(static_cast<int>(e));
    if (piece_of_root[r] < 0) {
      piece_of_root[r] = static_cast<int>(pieces.size());
      pieces.emplace_back();
      local.emplace_back(tree.vertices.size(), -1);
    }
    const int p = piece_of_root[r];
    auto idx = [&](int v) {
      if (local[p][v] < 0) local[p][v] = pieces[p].add_vertex(tree.vertices[v].pos, tree.vertices[v].role,
                                                              tree.vertices[v].label);
      return local[p][v];
    };
    const int a = idx(tree.edges[e].first);
    const int b = idx(tree.edges[e].second);
    pieces[p].add_edge(a, b);
  }
  return pieces;
}

EmbeddedTree reflected(const EmbeddedTree& tree, Point on_axis, Point dir) {
  EmbeddedTree out = tree;
  for (auto& v : out.vertices) v.pos = reflect(v.pos, on_axis, dir);
  return out;
}

bool trees_equal(const EmbeddedTree& a, const EmbeddedTree& b, double tol) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> match(a.vertices.size(), -1);
  std::vector<char> used(b.vertices.size(), 0);
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.vertices.size(); ++j) {
      if (used[j] || b.vertices[j].role != a.vertices[i].role) continue;
      const double d = distance(a.vertices[i].pos, b.vertices[j].pos);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || bd > tol) return false;
    match[i] = best;
    used[best] = 1;
  }
  std::set<std::pair<int, int>> eb;
  for (auto [x, y] : b.edges) eb.insert({std::min(x, y), std::max(x, y)});
  for (auto [x, y] : a.edges) {
    const int p = match[x], q = match[y];
    if (!eb.count({std::min(p, q), std::max(p, q)})) return false;
  }
  return true;
}

bool trees_mirror_equal(const EmbeddedTree& a, const EmbeddedTree& b, Point on_axis, Point dir,
                        double tol) {
  return trees_equal(reflected(a, on_axis, dir), b, tol);
}

double distance_to_tree(const Point& p, const EmbeddedTree& tree) {
  double best = std::numeric_limits<double>::infinity();
  for (auto [x, y] : tree.edges)
    best = std::min(best, point_segment_distance(p, tree.vertices[x].pos, tree.vertices[y].pos));
  if (tree.edges.empty())
    for (const auto& v : tree.vertices) best = std::min(best, distance(p, v.pos));
  return best;
}

}  // namespace steiner_ladder::analysis
