#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace steiner_ladder {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Raised when an operation receives coincident, collinear or non-finite input
/// it cannot handle.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a parameter lies outside the domain an operation supports.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised when parameters violate the hypotheses a construction relies on.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Planar point. Doubles as a complex number for length identities.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point() = default;
  constexpr Point(double x_, double y_) : x(x_), y(y_) {}
  explicit Point(std::complex<double> z) : x(z.real()), y(z.imag()) {}

  std::complex<double> complex() const { return {x, y}; }

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator-() const { return {-x, -y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr Point operator/(double s) const { return {x / s, y / s}; }
  Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point& operator-=(const Point& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Point&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Point operator*(double s, const Point& p) { return p * s; }

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// Unit vector at angle `theta` from the positive x-axis.
inline Point unit_at(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// `p` rotated counter-clockwise by `theta` about the origin.
inline Point rotate(const Point& p, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Normalized copy of `p`; throws DegenerateInput for the zero vector.
Point unit(const Point& p);

/// Throws DegenerateInput naming `what` if `p` has a NaN or infinite coordinate.
void require_finite(const Point& p, const char* what);

enum class Side { left, right };

/// Third vertex of the equilateral triangle on [p1 p2]. `left` places it to
/// the left of the directed segment p1 -> p2.
Point equilateral_third(const Point& p1, const Point& p2, Side side);

enum class FermatKind { interior, vertex };

struct FermatResult {
  Point point;
  FermatKind kind;
  /// Index (0, 1, 2) of the returned vertex when kind == vertex.
  int vertex_index = -1;
};

/// Point minimizing the sum of distances to a, b, c.
FermatResult fermat_point(const Point& a, const Point& b, const Point& c);

/// Convex angle in [0, pi] at `vertex` between the rays towards p and q.
double angle_at(const Point& vertex, const Point& p, const Point& q);

/// Three-direction frame: e1 + e2 + e3 = 0, unit length, counter-clockwise.
struct HexFrame {
  Point e1;
  Point e2;
  Point e3;
  Point origin;

  /// Frame with e1 at angle `theta` from the x-axis, e2 and e3 following at
  /// +2pi/3 and -2pi/3.
  static HexFrame at_angle(double theta, Point origin = {});

  /// Throws DegenerateInput when the frame invariants fail.
  void validate() const;
};

/// Hexagonal coordinates; (u, v, w) ~ (u + t, v + t, w + t).
struct HexCoord {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  /// Representative of the same class with v + w = 0.
  HexCoord canonical() const;
};

HexCoord to_hex(const Point& p, const HexFrame& frame);
Point from_hex(const HexCoord& h, const HexFrame& frame);

/// Intersection of the lines through (p, p + d) and (q, q + e). Empty when the
/// lines are parallel within `tol` relative to |d||e|.
bool intersect_lines(const Point& p, const Point& d, const Point& q, const Point& e,
                     Point& out, double tol = 1e-14);

/// Distance from `p` to the closed segment [a b].
double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// Reflection of `p` across the line through `on_line` with direction `dir`.
Point reflect(const Point& p, const Point& on_line, const Point& dir);

std::string to_string(const Point& p);

}  // namespace steiner_ladder
