#include "steiner_ladder/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace steiner_ladder::dynamics {

namespace {
constexpr double kForbiddenTol = 1e-12;
constexpr double kOrbitTol = 1e-9;
}  // namespace

const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::ok: return "ok";
    case OrbitStatus::hit_forbidden: return "hit_forbidden";
    case OrbitStatus::escaped: return "escaped";
  }
  return "ok";
}

DynamicsParams make_params(double lambda, double a, double b, double delta) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw HypothesisViolation("lambda must lie in (0, 1)");
  if (!(a + b > 0.0)) throw HypothesisViolation("a + b must be positive");
  DynamicsParams p;
  p.lambda = lambda;
  p.a = a;
  p.b = b;
  p.delta = delta;
  const double base = 0.5 + ((1.0 - lambda) * delta - a) / (lambda * (a + b));
  p.q_plus = base + 0.5 / lambda;
  p.q_minus = base - 0.5 / lambda;
  p.t1 = lambda * (1.0 - p.q_plus);
  p.t_star = a / (a + b);
  p.t2 = -lambda * p.q_minus;
  return p;
}

DynamicsParams derive_params(double alpha, double lambda, double beta) {
  if (!ladder::condition_holds(alpha, lambda) || !(alpha > 0.0 && alpha < kPi / 6.0))
    throw HypothesisViolation("angle condition fails for these alpha, lambda");
  if (!(std::abs(beta) <= alpha)) throw HypothesisViolation("|beta| must not exceed alpha");
  const HexFrame f = HexFrame::at_angle(beta);
  // A1 - B1 = 2i sin(alpha) = 2b e2 - 2a e3
  const Point rhs{0.0, 2.0 * std::sin(alpha)};
  const Point m3 = -f.e3;
  const double det = cross(f.e2, m3);
  const double two_b = cross(rhs, m3) / det;
  const double two_a = cross(f.e2, rhs) / det;
  const HexCoord c = to_hex({std::cos(alpha), 0.0}, f);
  DynamicsParams p = make_params(lambda, two_a / 2.0, two_b / 2.0, c.v);
  p.alpha = alpha;
  p.beta = beta;
  p.l = c.u;
  return p;
}

Parallelogram parallelogram(const DynamicsParams& p, int k) {
  const HexFrame f = p.frame();
  const double r = std::pow(p.lambda, k - 1);
  const Point C{r * std::cos(p.alpha), 0.0};
  const Point be2 = f.e2 * (r * p.b), ae3 = f.e3 * (r * p.a);
  return {C + be2 - ae3, C - be2 + ae3, C - be2 - ae3, C + be2 + ae3};
}

double hex_height(const DynamicsParams& p, const Point& x) { return to_hex(x, p.frame()).v; }

double mu_from_nu(const DynamicsParams& p, int j, double nu) {
  return std::pow(p.lambda, j) * ((p.a + p.b) * (nu - 0.5) + p.delta);
}

double nu_from_mu(const DynamicsParams& p, int j, double mu) {
  return 0.5 + (std::pow(p.lambda, -j) * mu - p.delta) / (p.a + p.b);
}

MapResult forward_map(const DynamicsParams& p, double t) {
  if (std::abs(t - p.t_star) <= kForbiddenTol) return {t, MapStatus::forbidden};
  const double r = t / p.lambda + (t < p.t_star ? p.q_plus : p.q_minus);
  if (r < -kForbiddenTol || r > 1.0 + kForbiddenTol) return {r, MapStatus::escaped};
  return {std::clamp(r, 0.0, 1.0), MapStatus::ok};
}

MapResult inverse_map(const DynamicsParams& p, double t) {
  if (std::abs(t - p.q_plus) <= kForbiddenTol) return {t, MapStatus::forbidden};
  const double r = p.lambda * t + p.t2;
  return {r - std::floor(r), MapStatus::ok};
}

Orbit iterate(const DynamicsParams& p, double t0, int n, Direction dir) {
  if (!(t0 >= 0.0 && t0 <= 1.0)) throw OutOfRange("iterate: start must lie in [0, 1]");
  Orbit o;
  if (n <= 0) return o;
  o.values.push_back(t0);
  double t = t0;
  for (int i = 1; i < n; ++i) {
    const MapResult r = dir == Direction::forward ? forward_map(p, t) : inverse_map(p, t);
    if (r.status == MapStatus::forbidden) {
      o.status = OrbitStatus::hit_forbidden;
      return o;
    }
    if (r.status == MapStatus::escaped) {
      o.status = OrbitStatus::escaped;
      return o;
    }
    t = r.value;
    o.values.push_back(t);
  }
  return o;
}

std::vector<double> periodic_points(const DynamicsParams& p, int period) {
  if (period < 1 || period > 12) throw OutOfRange("periodic_points: period must lie in [1, 12]");
  const double m0 = std::floor(p.t2);
  const double lam_n = std::pow(p.lambda, period);
  std::vector<double> out;
  for (unsigned w = 0; w < (1u << period); ++w) {
    double c = 0.0;
    for (int i = 0; i < period; ++i) c = p.lambda * c + p.t2 - (m0 + ((w >> i) & 1u));
    double t = c / (1.0 - lam_n);
    if (t < -kForbiddenTol || t >= 1.0) continue;
    t = std::max(t, 0.0);
    double s = t;
    bool ok = true;
    for (int i = 0; i < period && ok; ++i) {
      const MapResult r = inverse_map(p, s);
      ok = r.status == MapStatus::ok;
      s = r.value;
    }
    if (!ok || std::abs(s - t) > kForbiddenTol) continue;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) <= kForbiddenTol; }),
            out.end());
  return out;
}

Orbit cycle_orbit(const DynamicsParams& p, double t, int period, int n, int first_index) {
  if (period < 1) throw OutOfRange("cycle_orbit: period must be >= 1");
  std::vector<double> back{t};
  for (int i = 1; i <= period; ++i) {
    const MapResult r = inverse_map(p, back.back());
    if (r.status != MapStatus::ok) throw HypothesisViolation("cycle_orbit: cycle meets the discontinuity");
    back.push_back(r.value);
  }
  if (std::abs(back.back() - t) > kForbiddenTol) throw HypothesisViolation("cycle_orbit: point is not periodic");
  Orbit o;
  o.first_index = first_index;
  for (int s = 0; s < n; ++s) o.values.push_back(back[(period - s % period) % period]);
  return o;
}

EmbeddedTree tree_from_orbit(const DynamicsParams& p, const ladder::LadderParams& ldr, const Orbit& orbit,
                             int K) {
  const int first = orbit.first_index;
  if (first != 0 && first != 1) throw OutOfRange("tree_from_orbit: first index must be 0 or 1");
  if (orbit.status != OrbitStatus::ok) throw HypothesisViolation("tree_from_orbit: orbit is not admissible");
  if (K < first + 1) throw OutOfRange("tree_from_orbit: depth too small");
  if (static_cast<int>(orbit.values.size()) < K - first + 1)
    throw OutOfRange("tree_from_orbit: orbit shorter than the depth");
  const HexFrame f = p.frame();
  auto check = [&](int j, double mu) {
    const double nu = nu_from_mu(p, j, mu);
    if (std::abs(nu - orbit.values[j - first]) > kOrbitTol)
      throw HypothesisViolation("tree_from_orbit: geometry leaves the orbit at index " + std::to_string(j));
    if (nu < -kOrbitTol || nu > 1.0 + kOrbitTol) throw HypothesisViolation("tree_from_orbit: orbit escapes");
    if (std::abs(nu - p.t_star) <= kForbiddenTol)
      throw HypothesisViolation("tree_from_orbit: orbit hits the forbidden point");
    return nu;
  };
  auto corner_label = [](char side, int k) { return std::string(1, side) + std::to_string(k); };

  EmbeddedTree t;
  int prev = -1;
  double mu = 0.0;
  if (first == 0) {
    mu = mu_from_nu(p, 0, orbit.values[0]);
    const double xs = ladder::segment_distance(ldr.alpha, ldr.lambda) * std::cos(ldr.alpha);
    Point start;
    if (!intersect_lines((f.e2 - f.e3) * mu, f.e1, {xs, 0.0}, {0.0, 1.0}, start))
      throw DegenerateInput("tree_from_orbit: segment parallel to e1");
    prev = t.add_vertex(start, Role::terminal, "x");
  } else {
    const Parallelogram P = parallelogram(p, 1);
    mu = hex_height(p, P.V);
    check(1, mu);
    const int a1 = t.add_vertex(P.A, Role::terminal, "A1");
    const int b1 = t.add_vertex(P.B, Role::terminal, "B1");
    prev = t.add_vertex(P.V, Role::steiner, "V1");
    t.add_edge(a1, prev);
    t.add_edge(b1, prev);
  }
  for (int k = first + 1; k <= K; ++k) {
    const int j = k - 1;
    const double nu = check(j, mu);
    const Parallelogram P = parallelogram(p, k);
    const double r = std::pow(p.lambda, k - 1);
    const double vu = hex_height(p, P.U);
    const bool green = nu > p.t_star;
    const bool corner = green ? std::abs(nu - 1.0) <= kOrbitTol : std::abs(nu) <= kOrbitTol;
    Point S, T;
    double next;
    if (green) {
      S = corner ? P.A : P.U + f.e2 * (2.0 * (mu - vu));
      T = S + f.e3 * (2.0 * p.a * r);
      next = mu - p.a * r;
    } else {
      S = corner ? P.B : P.U + f.e3 * (-2.0 * (mu - vu));
      T = S + f.e2 * (2.0 * p.b * r);
      next = mu + p.b * r;
    }
    if (corner) T = P.V;
    const int near = t.add_vertex(green ? P.A : P.B, Role::terminal, corner_label(green ? 'A' : 'B', k));
    const int far = t.add_vertex(green ? P.B : P.A, Role::terminal, corner_label(green ? 'B' : 'A', k));
    const int ti = t.add_vertex(T, Role::steiner, "T" + std::to_string(k));
    if (corner) {
      t.add_edge(prev, near);
      t.add_edge(near, ti);
    } else {
      const int si = t.add_vertex(S, Role::steiner, "S" + std::to_string(k));
      t.add_edge(prev, si);
      t.add_edge(si, near);
      t.add_edge(si, ti);
    }
    t.add_edge(ti, far);
    prev = ti;
    mu = next;
  }
  const double nu = check(K, mu);
  const Parallelogram P = parallelogram(p, K + 1);
  const double vu = hex_height(p, P.U);
  int end = -1;
  if (nu > p.t_star) {
    end = std::abs(nu - 1.0) <= kOrbitTol
              ? t.add_vertex(P.A, Role::terminal, corner_label('A', K + 1))
              : t.add_vertex(P.U + f.e2 * (2.0 * (mu - vu)), Role::terminal, kCutLabel);
  } else {
    end = std::abs(nu) <= kOrbitTol ? t.add_vertex(P.B, Role::terminal, corner_label('B', K + 1))
                                    : t.add_vertex(P.U + f.e3 * (-2.0 * (mu - vu)), Role::terminal, kCutLabel);
  }
  t.add_edge(prev, end);
  return t;
}

Orbit orbit_from_tree(const EmbeddedTree& tree, const DynamicsParams& p) {
  const HexFrame f = p.frame();
  const double c1 = std::cos(p.alpha);
  std::map<int, double> by_index;
  for (auto [a, b] : tree.edges) {
    const Point pa = tree.vertices[a].pos, pb = tree.vertices[b].pos;
    const Point d = pb - pa;
    if (d.norm2() == 0.0 || std::abs(cross(unit(d), f.e1)) >= 1e-6) continue;
    const Point inner = dot(pa, f.e1) < dot(pb, f.e1) ? pa : pb;
    const double rn = inner.norm();
    if (!(rn > 0.0)) continue;
    const int k = static_cast<int>(std::lround(std::log(rn / c1) / std::log(p.lambda))) + 1;
    const int j = k - 1;
    if (j < 0) continue;
    by_index[j] = nu_from_mu(p, j, hex_height(p, inner));
  }
  Orbit o;
  if (by_index.empty()) return o;
  o.first_index = by_index.begin()->first;
  int expect = o.first_index;
  for (auto [j, nu] : by_index) {
    if (j != expect) throw DegenerateInput("orbit_from_tree: missing segment at index " + std::to_string(expect));
    o.values.push_back(nu);
    ++expect;
  }
  return o;
}

double estimate_beta(const EmbeddedTree& tree) {
  double best = 0.0;
  bool have = false;
  for (const auto& e : tree.edges) {
    const Point d = tree.vertices[e.second].pos - tree.vertices[e.first].pos;
    if (d.norm2() == 0.0) continue;
    double t = std::atan2(d.y, d.x);
    while (t > kPi / 2.0) t -= kPi;
    while (t <= -kPi / 2.0) t += kPi;
    if (!have || std::abs(t) < std::abs(best)) {
      best = t;
      have = true;
    }
  }
  if (!have) throw DegenerateInput("estimate_beta: tree has no edges");
  return best;
}

}  // namespace steiner_ladder::dynamics
