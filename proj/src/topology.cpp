#include "steiner_ladder/topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "steiner_ladder/geom.hpp"

namespace steiner_ladder::topology {

namespace {

std::vector<std::vector<int>> adjacency(const Topology& t) {
  std::vector<std::vector<int>> adj(t.n_terminals + t.n_steiner);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace

Topology Topology::canonical() const {
  const int nv = n_terminals + n_steiner;
  const auto adj = adjacency(*this);
  // root at terminal 0; order children by the smallest terminal below them
  std::vector<int> parent(nv, -1), order;
  order.reserve(nv);
  std::vector<char> seen(nv, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
  }
  std::vector<int> min_leaf(nv, nv);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v < n_terminals) min_leaf[v] = std::min(min_leaf[v], v);
    if (parent[v] >= 0) min_leaf[parent[v]] = std::min(min_leaf[parent[v]], min_leaf[v]);
  }
  std::vector<int> relabel(nv, -1);
  for (int i = 0; i < n_terminals; ++i) relabel[i] = i;
  int next = n_terminals;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    std::vector<int> kids;
    for (int w : adj[v])
      if (w != parent[v]) kids.push_back(w);
    std::sort(kids.begin(), kids.end(), [&](int x, int y) { return min_leaf[x] < min_leaf[y]; });
    for (int w : kids) {
      if (w >= n_terminals) relabel[w] = next++;
      q.push(w);
    }
  }
  Topology out{n_terminals, n_steiner, {}};
  out.edges.reserve(edges.size());
  for (auto [a, b] : edges) {
    int x = relabel[a], y = relabel[b];
    if (x > y) std::swap(x, y);
    out.edges.emplace_back(x, y);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

bool Topology::is_full() const {
  const int nv = n_terminals + n_steiner;
  if (n_terminals < 2 || static_cast<int>(edges.size()) != nv - 1) return false;
  std::vector<int> deg(nv, 0), parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) return false;
    ++deg[a];
    ++deg[b];
    const int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  for (int i = 0; i < nv; ++i)
    if (deg[i] != (i < n_terminals ? 1 : 3)) return false;
  return true;
}

std::uint64_t count_full_topologies(int n) {
  if (n < 3) throw OutOfRange("count_full_topologies: n must be >= 3");
  // (2n-4)! / (2^(n-2) (n-2)!) = (2n-5)!!
  std::uint64_t r = 1;
  for (int k = 3; k <= 2 * n - 5; k += 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

std::vector<Topology> enumerate_full_topologies(int n) {
  if (n < 3 || n > 9) throw OutOfRange("enumerate_full_topologies: n must lie in [3, 9]");
  std::vector<Topology> out;
  out.reserve(count_full_topologies(n));
  Topology cur{n, n - 2, {{0, n}, {1, n}, {2, n}}};
  // insert terminal k by subdividing each existing edge with a new Steiner label
  auto grow = [&](auto&& self, int k) -> void {
    if (k == n) {
      out.push_back(cur.canonical());
      return;
    }
    const int s = n + k - 2;
    const std::size_t m = cur.edges.size();
    for (std::size_t e = 0; e < m; ++e) {
      const auto [u, v] = cur.edges[e];
      cur.edges[e] = {u, s};
      cur.edges.emplace_back(s, v);
      cur.edges.emplace_back(k, s);
      self(self, k + 1);
      cur.edges.pop_back();
      cur.edges.pop_back();
      cur.edges[e] = {u, v};
    }
  };
  grow(grow, 3);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_block_decomposition(const BlockDecomposition& d, int n) {
  if (n < 2) return false;
  const Mask full = (Mask{1} << n) - 1;
  Mask cover = 0;
  int rank = 0;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const Mask b = d.blocks[i];
    if (popcount(b) < 2 || (b & ~full)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (popcount(b & d.blocks[j]) > 1) return false;
    cover |= b;
    rank += popcount(b) - 1;
  }
  if (cover != full || rank != n - 1) return false;
  // connectivity of the union by flooding from vertex 0
  Mask reach = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (Mask b : d.blocks)
      if ((b & reach) && (b & ~reach)) {
        reach |= b;
        grew = true;
      }
  }
  return reach == full;
}

void for_each_block_decomposition(int n, int min_block,
                                  const std::function<void(const std::vector<Mask>&)>& visit) {
  if (n < 2 || n > 9) throw OutOfRange("block decompositions: n must lie in [2, 9]");
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Mask> blocks;
  std::vector<int> queue{0};
  queue.reserve(n);
  // Vertices are expanded in queue order. For the vertex at `head`, the lowest
  // remaining candidate is either left for a later vertex or starts a block
  // with the current vertex, completed by any subset of later candidates.
  auto rec = [&](auto&& self, std::size_t head, Mask cand, Mask visited) -> void {
    if (visited == full) {
      visit(blocks);
      return;
    }
    if (cand == 0) {
      if (head + 1 >= queue.size()) return;
      self(self, head + 1, full & ~visited, visited);
      return;
    }
    const Mask u = cand & (~cand + 1);
    const Mask rest = cand & ~u;
    self(self, head, rest, visited);
    const Mask v = Mask{1} << queue[head];
    for (Mask x = rest;; x = (x - 1) & rest) {
      const Mask block = v | u | x;
      if (popcount(block) >= min_block) {
        blocks.push_back(block);
        const std::size_t qlen = queue.size();
        for (Mask m = u | x; m; m &= m - 1) queue.push_back(std::countr_zero(m));
        self(self, head, rest & ~x, visited | u | x);
        queue.resize(qlen);
        blocks.pop_back();
      }
      if (x == 0) break;
    }
  };
  rec(rec, 0, full & ~Mask{1}, Mask{1});
}

std::vector<BlockDecomposition> enumerate_block_decompositions(int n, int min_block) {
  std::vector<BlockDecomposition> out;
  for_each_block_decomposition(n, min_block, [&](const std::vector<Mask>& b) {
    BlockDecomposition d{b};
    std::sort(d.blocks.begin(), d.blocks.end());
    out.push_back(std::move(d));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace steiner_ladder::topology
