#include "steiner_ladder/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace steiner_ladder {

std::vector<Point> TerminalSet::points() const {
  std::vector<Point> out;
  out.reserve(terminals.size());
  for (const auto& t : terminals) out.push_back(t.pos);
  return out;
}

int TerminalSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < terminals.size(); ++i)
    if (terminals[i].label == label) return static_cast<int>(i);
  return -1;
}

TerminalSet TerminalSet::subset(const std::vector<std::string>& labels) const {
  TerminalSet out;
  for (const auto& l : labels) {
    const int i = find(l);
    if (i < 0) throw OutOfRange("unknown terminal label: " + l);
    out.terminals.push_back(terminals[i]);
  }
  return out;
}

double EmbeddedTree::length() const {
  double s = 0.0;
  for (auto [a, b] : edges) s += distance(vertices[a].pos, vertices[b].pos);
  return s;
}

std::vector<int> EmbeddedTree::degrees() const {
  std::vector<int> d(vertices.size(), 0);
  for (auto [a, b] : edges) {
    ++d[a];
    ++d[b];
  }
  return d;
}

std::vector<std::vector<int>> EmbeddedTree::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int EmbeddedTree::add_vertex(Point p, Role role, std::string label) {
  vertices.push_back({p, role, std::move(label)});
  return static_cast<int>(vertices.size()) - 1;
}

int EmbeddedTree::find(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].label == label) return static_cast<int>(i);
  return -1;
}

double EmbeddedTree::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, distance(vertices[i].pos, vertices[j].pos));
  return d;
}

namespace {
int root_of(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}
}  // namespace

bool EmbeddedTree::connected() const {
  if (vertices.empty()) return true;
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::size_t comps = vertices.size();
  for (auto [a, b] : edges) {
    const int ra = root_of(parent, a), rb = root_of(parent, b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps == 1;
}

bool EmbeddedTree::acyclic() const {
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : edges) {
    const int ra = root_of(parent, a), rb = root_of(parent, b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

void glue_by_label(EmbeddedTree& into, const EmbeddedTree& part) {
  std::unordered_map<std::string, int> existing;
  for (std::size_t i = 0; i < into.vertices.size(); ++i)
    if (into.vertices[i].role == Role::terminal) existing.emplace(into.vertices[i].label, int(i));
  std::vector<int> remap(part.vertices.size());
  for (std::size_t i = 0; i < part.vertices.size(); ++i) {
    const Vertex& v = part.vertices[i];
    auto it = v.role == Role::terminal ? existing.find(v.label) : existing.end();
    remap[i] = it != existing.end() ? it->second : into.add_vertex(v.pos, v.role, v.label);
  }
  for (auto [a, b] : part.edges) into.add_edge(remap[a], remap[b]);
}

double vertex_hausdorff(const EmbeddedTree& a, const EmbeddedTree& b) {
  auto one_sided = [](const EmbeddedTree& x, const EmbeddedTree& y) {
    double worst = 0.0;
    for (const auto& v : x.vertices) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : y.vertices) best = std::min(best, distance(v.pos, w.pos));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.vertices.empty() || b.vertices.empty())
    return a.vertices.size() == b.vertices.size() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace steiner_ladder
