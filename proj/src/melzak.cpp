#include "steiner_ladder/melzak.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace steiner_ladder::melzak {

namespace {

using topology::Mask;
using topology::Topology;

constexpr int kMaxTerminals = 9;
constexpr int kMaxNodes = 2 * kMaxTerminals - 2;
constexpr double kArcTol = 1e-12;

// Post-order merge schedule of a full topology rooted at terminal 0.
struct Plan {
  int n = 0;
  std::vector<std::array<int, 2>> kids;  // node ids: terminal i < n, merge j -> n + j
  std::vector<int> parent;               // node id of the parent of merge j
  std::vector<int> label;                // Steiner label of merge j in the topology
};

Plan make_plan(const Topology& t) {
  const int n = t.n_terminals;
  const int nv = n + t.n_steiner;
  std::vector<std::vector<int>> adj(nv);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  Plan p;
  p.n = n;
  std::vector<int> node_of(nv, -1);
  for (int i = 0; i < n; ++i) node_of[i] = i;
  auto visit = [&](auto&& self, int v, int from) -> int {
    if (v < n) return v;
    std::array<int, 2> k{};
    int c = 0;
    for (int w : adj[v])
      if (w != from) k[c++] = self(self, w, v);
    const int j = static_cast<int>(p.kids.size());
    p.kids.push_back(k);
    p.label.push_back(v);
    node_of[v] = n + j;
    return n + j;
  };
  visit(visit, adj[0][0], 0);
  p.parent.assign(p.kids.size(), 0);
  for (std::size_t j = 0; j < p.kids.size(); ++j)
    for (int k : p.kids[j])
      if (k >= n) p.parent[k - n] = n + static_cast<int>(j);
  return p;
}

struct Realization {
  double length = 0.0;
  std::array<Point, kMaxNodes> pos{};  // indexed by node id
};

// Runs every merge orientation of `plan` on `pts` and reports each feasible
// embedding to `sink`.
template <class Sink>
void realize_all(const Plan& plan, const Point* pts, Sink&& sink) {
  const int n = plan.n;
  const int m = static_cast<int>(plan.kids.size());
  std::array<Point, kMaxNodes> pseudo{};
  for (int i = 0; i < n; ++i) pseudo[i] = pts[i];
  Realization r;
  for (int i = 0; i < n; ++i) r.pos[i] = pts[i];

  auto reconstruct = [&]() -> bool {
    double len = 0.0;
    for (int j = m - 1; j >= 0; --j) {
      const Point P = r.pos[plan.parent[j]];
      const Point M = pseudo[n + j];
      const Point c1 = pseudo[plan.kids[j][0]];
      const Point c2 = pseudo[plan.kids[j][1]];
      const Point chord = c2 - c1;
      const double side = chord.norm();
      const double radius = side / kSqrt3;
      const Point O = (c1 + c2 + M) / 3.0;
      const Point d = P - M;
      const double dd = d.norm2();
      if (!(dd > 0.0)) return false;
      const double t = -2.0 * dot(M - O, d) / dd;
      if (!(t > 0.0 && t < 1.0)) return false;
      if ((1.0 - t) * std::sqrt(dd) <= kArcTol * radius) return false;
      const Point q = M + d * t;
      const double hq = cross(chord, q - c1) / side;
      const double hm = cross(chord, M - c1) / side;
      // q must sit on the arc between c1 and c2 away from M
      if (!((hm > 0.0 && hq < -kArcTol * radius) || (hm < 0.0 && hq > kArcTol * radius))) return false;
      r.pos[n + j] = q;
      len += distance(q, P);
      for (int k : plan.kids[j])
        if (k < n) len += distance(q, pts[k]);
    }
    r.length = len;
    return true;
  };

  auto rec = [&](auto&& self, int j) -> void {
    if (j == m) {
      if (reconstruct()) sink(r);
      return;
    }
    const Point& a = pseudo[plan.kids[j][0]];
    const Point& b = pseudo[plan.kids[j][1]];
    pseudo[n + j] = equilateral_third(a, b, Side::left);
    self(self, j + 1);
    pseudo[n + j] = equilateral_third(a, b, Side::right);
    self(self, j + 1);
  };
  rec(rec, 0);
}

EmbeddedTree tree_from_plan(const TerminalSet& terminals, const Plan& plan, const Realization& r) {
  EmbeddedTree t;
  for (const auto& term : terminals.terminals) t.add_vertex(term.pos, Role::terminal, term.label);
  const int n = plan.n;
  for (std::size_t j = 0; j < plan.kids.size(); ++j)
    t.add_vertex(r.pos[n + j], Role::steiner, "s" + std::to_string(j + 1));
  for (std::size_t j = 0; j < plan.kids.size(); ++j)
    for (int k : plan.kids[j]) t.add_edge(k, n + static_cast<int>(j));
  t.add_edge(0, n + static_cast<int>(plan.kids.size()) - 1);
  return t;
}

void require_distinct(const TerminalSet& terminals) {
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    require_finite(terminals.terminals[i].pos, "terminal");
    for (std::size_t j = 0; j < i; ++j)
      if (terminals.terminals[i].pos == terminals.terminals[j].pos)
        throw DegenerateInput("coincident terminals " + terminals.terminals[j].label + " and " +
                              terminals.terminals[i].label);
  }
}

// Feasible full subtree on a terminal subset. Steiner positions are indexed by
// post-order merge number of the plan for topology `topo`.
struct Fst {
  double length = 0.0;
  int topo = -1;
  std::array<Point, kMaxTerminals - 2> steiner{};
};

// Merge schedules for every full topology of each size, built on first use.
const std::vector<Plan>& plans_for(int k) {
  static std::array<std::vector<Plan>, kMaxTerminals + 1> by_size;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& v = by_size[k];
  if (v.empty())
    for (const auto& t : topology::enumerate_full_topologies(k)) v.push_back(make_plan(t));
  return v;
}

}  // namespace

std::optional<EmbeddedTree> realize_full_topology(const TerminalSet& terminals, const Topology& topo) {
  if (!topo.is_full() || topo.n_terminals != static_cast<int>(terminals.size()))
    throw OutOfRange("realize_full_topology: topology is not full on the given terminals");
  if (topo.n_terminals > kMaxTerminals) throw OutOfRange("realize_full_topology: too many terminals");
  require_distinct(terminals);
  if (topo.n_terminals == 2) {
    EmbeddedTree t;
    for (const auto& term : terminals.terminals) t.add_vertex(term.pos, Role::terminal, term.label);
    t.add_edge(0, 1);
    return t;
  }
  const Plan plan = make_plan(topo);
  const auto pts = terminals.points();
  std::optional<Realization> best;
  realize_all(plan, pts.data(), [&](const Realization& r) {
    if (!best || r.length < best->length) best = r;
  });
  if (!best) return std::nullopt;
  return tree_from_plan(terminals, plan, *best);
}

EmbeddedTree minimum_spanning_tree(const TerminalSet& terminals) {
  const int n = static_cast<int>(terminals.size());
  if (n < 1) throw OutOfRange("minimum_spanning_tree: empty terminal set");
  EmbeddedTree t;
  for (const auto& term : terminals.terminals) t.add_vertex(term.pos, Role::terminal, term.label);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> from(n, -1);
  std::vector<char> in(n, 0);
  dist[0] = 0.0;
  for (int it = 0; it < n; ++it) {
    int v = -1;
    for (int i = 0; i < n; ++i)
      if (!in[i] && (v < 0 || dist[i] < dist[v])) v = i;
    in[v] = 1;
    if (from[v] >= 0) t.add_edge(from[v], v);
    for (int i = 0; i < n; ++i) {
      if (in[i]) continue;
      const double d = distance(terminals.terminals[v].pos, terminals.terminals[i].pos);
      if (d < dist[i]) {
        dist[i] = d;
        from[i] = v;
      }
    }
  }
  return t;
}

SteinerSolution solve_exact(const TerminalSet& terminals, double tol, int threads) {
  const int n = static_cast<int>(terminals.size());
  if (n < 2 || n > kMaxTerminals) throw OutOfRange("solve_exact: need between 2 and 9 terminals");
  if (!(tol >= 0.0)) throw OutOfRange("solve_exact: tolerance must be non-negative");
  require_distinct(terminals);
  const auto pts = terminals.points();
  const Mask full = (Mask{1} << n) - 1;
  std::array<const std::vector<Plan>*, kMaxTerminals + 1> plans{};
  for (int k = 3; k <= n; ++k) plans[k] = &plans_for(k);

  // Phase 1: feasible full subtrees for every subset of size >= 3.
  struct Chunk {
    Mask subset;
    int k;
    std::size_t begin, end;
    std::vector<Fst> found;
  };
  std::vector<Chunk> chunks;
  constexpr std::size_t kChunk = 2048;
  for (Mask s = 1; s <= full; ++s) {
    const int k = topology::popcount(s);
    if (k < 3) continue;
    const std::size_t count = plans[k]->size();
    for (std::size_t b = 0; b < count; b += kChunk) chunks.push_back({s, k, b, std::min(count, b + kChunk), {}});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t c; (c = next.fetch_add(1)) < chunks.size();) {
      Chunk& ch = chunks[c];
      std::array<Point, kMaxTerminals> local{};
      int k = 0;
      for (Mask m = ch.subset; m; m &= m - 1) local[k++] = pts[std::countr_zero(m)];
      const auto& kplans = *plans[ch.k];
      for (std::size_t ti = ch.begin; ti < ch.end; ++ti) {
        std::optional<Fst> best;
        realize_all(kplans[ti], local.data(), [&](const Realization& r) {
          if (best && best->length <= r.length) return;
          best = Fst{r.length, static_cast<int>(ti), {}};
          for (int j = 0; j < ch.k - 2; ++j) best->steiner[j] = r.pos[ch.k + j];
        });
        if (best) ch.found.push_back(*best);
      }
    }
  };
  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, 64);
  {
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  std::vector<std::vector<Fst>> fsts(std::size_t{full} + 1);
  for (auto& ch : chunks)
    for (auto& f : ch.found) fsts[ch.subset].push_back(f);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(std::size_t{full} + 1, inf);
  for (Mask s = 1; s <= full; ++s) {
    const int k = topology::popcount(s);
    if (k == 2) {
      const int a = std::countr_zero(s);
      const int b = std::countr_zero(s & (s - 1));
      cost[s] = distance(pts[a], pts[b]);
    } else if (k >= 3) {
      auto& v = fsts[s];
      std::stable_sort(v.begin(), v.end(), [](const Fst& x, const Fst& y) { return x.length < y.length; });
      if (!v.empty()) cost[s] = v.front().length;
    }
  }

  // Phase 2: cheapest hypertree of blocks, keeping every one within tol.
  double best = minimum_spanning_tree(terminals).length();
  std::vector<std::pair<double, std::vector<Mask>>> kept;
  std::vector<Mask> blocks;
  std::vector<int> queue{0};
  auto rec = [&](auto&& self, std::size_t head, Mask cand, Mask visited, double acc) -> void {
    if (acc > best + tol) return;
    if (visited == full) {
      if (acc < best) {
        best = acc;
        std::erase_if(kept, [&](const auto& e) { return e.first > best + tol; });
      }
      kept.emplace_back(acc, blocks);
      return;
    }
    if (cand == 0) {
      if (head + 1 >= queue.size()) return;
      self(self, head + 1, full & ~visited, visited, acc);
      return;
    }
    const Mask u = cand & (~cand + 1);
    const Mask rest = cand & ~u;
    self(self, head, rest, visited, acc);
    const Mask v = Mask{1} << queue[head];
    for (Mask x = rest;; x = (x - 1) & rest) {
      const Mask block = v | u | x;
      const double c = cost[block];
      if (c < inf && acc + c <= best + tol) {
        blocks.push_back(block);
        const std::size_t qlen = queue.size();
        for (Mask m = u | x; m; m &= m - 1) queue.push_back(std::countr_zero(m));
        self(self, head, rest & ~x, visited | u | x, acc + c);
        queue.resize(qlen);
        blocks.pop_back();
      }
      if (x == 0) break;
    }
  };
  rec(rec, 0, full & ~Mask{1}, Mask{1}, 0.0);

  // Phase 3: expand each kept hypertree over subtree alternatives within tol.
  std::vector<std::pair<double, EmbeddedTree>> candidates;
  for (const auto& [hcost, hblocks] : kept) {
    const double slack = best + tol - hcost;
    std::vector<int> choice(hblocks.size(), 0);
    std::vector<std::vector<int>> alts(hblocks.size());
    for (std::size_t i = 0; i < hblocks.size(); ++i) {
      const Mask b = hblocks[i];
      if (topology::popcount(b) == 2) {
        alts[i].push_back(-1);
        continue;
      }
      const auto& v = fsts[b];
      for (std::size_t a = 0; a < v.size() && v[a].length <= cost[b] + slack; ++a) alts[i].push_back(int(a));
    }
    auto expand = [&](auto&& self, std::size_t i, double extra) -> void {
      if (extra > slack) return;
      if (i == hblocks.size()) {
        EmbeddedTree t;
        for (const auto& term : terminals.terminals) t.add_vertex(term.pos, Role::terminal, term.label);
        int sid = 0;
        for (std::size_t bi = 0; bi < hblocks.size(); ++bi) {
          const Mask b = hblocks[bi];
          std::array<int, kMaxTerminals> global{};
          int k = 0;
          for (Mask m = b; m; m &= m - 1) global[k++] = std::countr_zero(m);
          if (k == 2) {
            t.add_edge(global[0], global[1]);
            continue;
          }
          const Fst& f = fsts[b][choice[bi]];
          const Plan& plan = (*plans[k])[f.topo];
          const int base = static_cast<int>(t.vertices.size());
          for (int j = 0; j < k - 2; ++j) t.add_vertex(f.steiner[j], Role::steiner, "s" + std::to_string(++sid));
          auto node = [&](int id) { return id < k ? global[id] : base + id - k; };
          for (int j = 0; j < k - 2; ++j)
            for (int c : plan.kids[j]) t.add_edge(node(c), base + j);
          t.add_edge(global[0], base + k - 3);
        }
        const double len = t.length();
        candidates.emplace_back(len, std::move(t));
        return;
      }
      const Mask b = hblocks[i];
      for (int a : alts[i]) {
        choice[i] = a;
        const double e = a < 0 ? 0.0 : fsts[b][a].length - cost[b];
        self(self, i + 1, extra + e);
      }
    };
    expand(expand, 0, 0.0);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  // Phase 4: drop duplicate embeddings.
  SteinerSolution sol;
  sol.optimality_gap_tol = tol;
  double diam = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) diam = std::max(diam, distance(pts[i], pts[j]));
  const double min_len = candidates.empty() ? best : candidates.front().first;
  for (auto& [len, t] : candidates) {
    if (len > min_len + tol) continue;
    bool dup = false;
    for (const auto& o : sol.co_optima)
      if (o.vertices.size() == t.vertices.size() && vertex_hausdorff(o, t) <= 1e-6 * diam) {
        dup = true;
        break;
      }
    if (!dup) sol.co_optima.push_back(std::move(t));
  }
  sol.best = sol.co_optima.front();
  return sol;
}

double steiner_ratio(const TerminalSet& terminals) {
  const double mst = minimum_spanning_tree(terminals).length();
  if (!(mst > 0.0)) throw DegenerateInput("steiner_ratio: zero spanning length");
  return solve_exact(terminals).best.length() / mst;
}

}  // namespace steiner_ladder::melzak
