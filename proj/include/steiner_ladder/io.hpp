#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "steiner_ladder/dynamics.hpp"
#include "steiner_ladder/tree.hpp"

namespace steiner_ladder::io {

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decimal string with 17 significant digits; reads back to the same double.
/// Locale independent.
std::string format_real(double v);
/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);
/// Strict locale-independent parse of a whole string. Throws ParseError.
double parse_real(const std::string& s);

/// Accepts plain reals and the forms "pi", "pi/N", "M*pi/N", "Xdeg".
double parse_angle(const std::string& s);

std::string serialize_instance(const TerminalSet& ts);
/// Throws ParseError on malformed input, duplicate labels, or a family
/// descriptor that does not regenerate the listed coordinates.
TerminalSet parse_instance(const std::string& text);

struct TreeFile {
  EmbeddedTree tree;
  std::optional<FamilyDescriptor> family;
};

std::string serialize_tree(const EmbeddedTree& tree, const std::optional<FamilyDescriptor>& family = {});
TreeFile parse_tree(const std::string& text);

struct ResultRecord {
  std::string instance_id;
  /// exact, closed_form, maxwell, edge_sum or dynamics
  std::string method;
  double length = 0.0;
  int co_optima = 0;
  double wall_time = 0.0;
};

std::string record_json(const ResultRecord& r);

/// Columns k, nu, mu, branch; a final row gives the orbit status and length.
std::string orbit_csv(const dynamics::DynamicsParams& p, const dynamics::Orbit& orbit);

struct SvgOptions {
  int width = 800;
  int height = 600;
  /// Draw the two sides of the angle when set.
  std::optional<double> alpha;
};

/// Deterministic SVG: fixed six-decimal coordinates, elements sorted within
/// the groups angle sides, edges, terminals, Steiner points.
std::string render_svg(const EmbeddedTree& tree, const SvgOptions& opt);

std::string read_file(const std::string& path);
/// Writes to a temporary file beside `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace steiner_ladder::io
