#include "steiner_ladder/geom.hpp"

#include <algorithm>
#include <cstdio>

namespace steiner_ladder {

Point unit(const Point& p) {
  const double n = p.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateInput("unit: zero or non-finite vector");
  return p / n;
}

void require_finite(const Point& p, const char* what) {
  if (!p.finite()) throw DegenerateInput(std::string(what) + ": non-finite coordinate");
}

Point equilateral_third(const Point& p1, const Point& p2, Side side) {
  require_finite(p1, "equilateral_third");
  require_finite(p2, "equilateral_third");
  const Point d = p2 - p1;
  if (d.norm2() == 0.0) throw DegenerateInput("equilateral_third: coincident points");
  const double s = side == Side::left ? kSqrt3 / 2.0 : -kSqrt3 / 2.0;
  // midpoint plus the rotated half-chord
  return Point{p1.x + 0.5 * d.x - s * d.y, p1.y + 0.5 * d.y + s * d.x};
}

double angle_at(const Point& vertex, const Point& p, const Point& q) {
  const Point u = p - vertex;
  const Point v = q - vertex;
  if (u.norm2() == 0.0 || v.norm2() == 0.0) throw DegenerateInput("angle_at: ray of zero length");
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

FermatResult fermat_point(const Point& a, const Point& b, const Point& c) {
  require_finite(a, "fermat_point");
  require_finite(b, "fermat_point");
  require_finite(c, "fermat_point");
  const std::array<Point, 3> v{a, b, c};
  const double scale = std::max({distance(a, b), distance(b, c), distance(c, a)});
  if (!(scale > 0.0)) throw DegenerateInput("fermat_point: coincident points");
  if (std::abs(cross(b - a, c - a)) <= 1e-14 * scale * scale) {
    // collinear: the middle point is the minimizer
    for (int i = 0; i < 3; ++i) {
      const Point& m = v[i];
      const Point& p = v[(i + 1) % 3];
      const Point& q = v[(i + 2) % 3];
      if (dot(p - m, q - m) <= 0.0) return {m, FermatKind::vertex, i};
    }
  }
  std::array<double, 3> ang{};
  for (int i = 0; i < 3; ++i) {
    if (v[i] == v[(i + 1) % 3] || v[i] == v[(i + 2) % 3]) return {v[i], FermatKind::vertex, i};
    ang[i] = angle_at(v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
    if (ang[i] >= kTwoThirdsPi) return {v[i], FermatKind::vertex, i};
  }
  // barycentric weights |opposite side| / sin(angle + pi/3)
  const std::array<double, 3> side{distance(b, c), distance(c, a), distance(a, b)};
  Point acc;
  double wsum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double w = side[i] / std::sin(ang[i] + kPi / 3.0);
    acc += v[i] * w;
    wsum += w;
  }
  return {acc / wsum, FermatKind::interior, -1};
}

HexFrame HexFrame::at_angle(double theta, Point origin) {
  return {unit_at(theta), unit_at(theta + kTwoThirdsPi), unit_at(theta - kTwoThirdsPi), origin};
}

void HexFrame::validate() const {
  const Point s = e1 + e2 + e3;
  if (s.norm() > 1e-12) throw DegenerateInput("HexFrame: e1 + e2 + e3 != 0");
  for (const Point* e : {&e1, &e2, &e3})
    if (std::abs(e->norm() - 1.0) > 1e-12) throw DegenerateInput("HexFrame: non-unit direction");
  if (!(cross(e1, e2) > 0.0)) throw DegenerateInput("HexFrame: clockwise orientation");
  require_finite(origin, "HexFrame origin");
}

HexCoord HexCoord::canonical() const {
  const double t = -(v + w) / 2.0;
  return {u + t, v + t, w + t};
}

HexCoord to_hex(const Point& p, const HexFrame& frame) {
  // p - origin = u e1 + v (e2 - e3) on the canonical slice
  const Point d = p - frame.origin;
  const Point f = frame.e2 - frame.e3;
  const double det = cross(frame.e1, f);
  const double u = cross(d, f) / det;
  const double v = cross(frame.e1, d) / det;
  return {u, v, -v};
}

Point from_hex(const HexCoord& h, const HexFrame& frame) {
  return frame.origin + frame.e1 * h.u + frame.e2 * h.v + frame.e3 * h.w;
}

bool intersect_lines(const Point& p, const Point& d, const Point& q, const Point& e, Point& out,
                     double tol) {
  const double den = cross(d, e);
  if (std::abs(den) <= tol * d.norm() * e.norm()) return false;
  const double s = cross(q - p, e) / den;
  out = p + d * s;
  return true;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double l2 = ab.norm2();
  if (l2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

Point reflect(const Point& p, const Point& on_line, const Point& dir) {
  const Point u = unit(dir);
  const Point r = p - on_line;
  const Point along = u * dot(r, u);
  return on_line + along * 2.0 - r;
}

std::string to_string(const Point& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", p.x, p.y);
  return buf;
}

}  // namespace steiner_ladder
