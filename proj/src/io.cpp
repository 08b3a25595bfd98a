#include "steiner_ladder/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "steiner_ladder/ladder.hpp"

namespace steiner_ladder::io {

using nlohmann::json;

std::string format_real(double v) {
  if (!std::isfinite(v)) throw ParseError("cannot serialize a non-finite value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos) s.erase(0, s[0] == '-' ? 1 : 0);  // no "-0.000000"
  return s;
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) throw ParseError("not a real number: '" + s + "'");
  return v;
}

double parse_angle(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.size() > 3 && s.ends_with("deg")) return parse_real(s.substr(0, s.size() - 3)) * kPi / 180.0;
  const auto pi = s.find("pi");
  if (pi == std::string::npos) return parse_real(s);
  double num = 1.0, den = 1.0;
  const std::string head = s.substr(0, pi);
  if (!head.empty()) {
    if (head.back() != '*') throw ParseError("bad angle: '" + raw + "'");
    num = parse_real(head.substr(0, head.size() - 1));
  }
  const std::string tail = s.substr(pi + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw ParseError("bad angle: '" + raw + "'");
    den = parse_real(tail.substr(1));
  }
  if (den == 0.0) throw ParseError("bad angle: '" + raw + "'");
  return num * kPi / den;
}

namespace {

double real_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw ParseError(std::string("field '") + key + "' is not a number");
}

json family_json(const FamilyDescriptor& f) {
  return {{"family", f.family == Family::A1 ? "A1" : "A0"},
          {"alpha", format_real(f.alpha)},
          {"lambda", format_real(f.lambda)},
          {"depth", f.depth}};
}

FamilyDescriptor family_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("family must be an object");
  FamilyDescriptor f;
  const std::string name = j.value("family", "");
  if (name == "A1") f.family = Family::A1;
  else if (name == "A0") f.family = Family::A0;
  else throw ParseError("unknown family '" + name + "'");
  f.alpha = real_field(j, "alpha");
  f.lambda = real_field(j, "lambda");
  if (!j.contains("depth") || !j.at("depth").is_number_integer()) throw ParseError("family depth must be an integer");
  f.depth = j.at("depth").get<int>();
  return f;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void check_schema(const json& j) {
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != kSchemaVersion)
    throw ParseError("unsupported or missing schema_version");
}

}  // namespace

std::string serialize_instance(const TerminalSet& ts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json terms = json::array();
  for (const auto& t : ts.terminals)
    terms.push_back({{"label", t.label}, {"x", format_real(t.pos.x)}, {"y", format_real(t.pos.y)}});
  j["terminals"] = terms;
  if (ts.family) j["family"] = family_json(*ts.family);
  if (ts.segment) j["segment"] = {ts.segment->first, ts.segment->second};
  return j.dump(2) + "\n";
}

TerminalSet parse_instance(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (!j.contains("terminals") || !j.at("terminals").is_array()) throw ParseError("missing terminals array");
  TerminalSet ts;
  std::set<std::string> seen;
  for (const auto& t : j.at("terminals")) {
    if (!t.is_object() || !t.contains("label") || !t.at("label").is_string())
      throw ParseError("terminal without a string label");
    Terminal term{t.at("label").get<std::string>(), {real_field(t, "x"), real_field(t, "y")}};
    if (!seen.insert(term.label).second) throw ParseError("duplicate label '" + term.label + "'");
    ts.terminals.push_back(term);
  }
  if (j.contains("segment")) {
    const json& s = j.at("segment");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
      throw ParseError("segment must be a pair of terminal indices");
    const int a = s[0].get<int>(), b = s[1].get<int>();
    const int n = static_cast<int>(ts.size());
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw ParseError("segment indices out of range");
    ts.segment = {a, b};
  }
  if (j.contains("family")) {
    const FamilyDescriptor f = family_from_json(j.at("family"));
    TerminalSet regen;
    try {
      regen = ladder::build_input({f.alpha, f.lambda, f.depth}, f.family);
    } catch (const std::exception& e) {
      throw ParseError(std::string("family descriptor is invalid: ") + e.what());
    }
    if (regen.size() != ts.size()) throw ParseError("family descriptor does not match the terminal count");
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (regen.terminals[i].label != ts.terminals[i].label || regen.terminals[i].pos != ts.terminals[i].pos)
        throw ParseError("family descriptor does not regenerate terminal " + ts.terminals[i].label);
    ts.family = f;
  }
  return ts;
}

std::string serialize_tree(const EmbeddedTree& tree, const std::optional<FamilyDescriptor>& family) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json verts = json::array();
  for (const auto& v : tree.vertices)
    verts.push_back({{"label", v.label},
                     {"role", v.role == Role::terminal ? "terminal" : "steiner"},
                     {"x", format_real(v.pos.x)},
                     {"y", format_real(v.pos.y)}});
  j["vertices"] = verts;
  json edges = json::array();
  for (auto [a, b] : tree.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["length"] = format_real(tree.length());
  if (family) j["family"] = family_json(*family);
  return j.dump(2) + "\n";
}

TreeFile parse_tree(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (!j.contains("vertices") || !j.at("vertices").is_array() || !j.contains("edges") || !j.at("edges").is_array())
    throw ParseError("tree needs vertices and edges arrays");
  TreeFile out;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_object()) throw ParseError("vertex must be an object");
    const std::string role = v.value("role", "");
    if (role != "terminal" && role != "steiner") throw ParseError("vertex role must be terminal or steiner");
    out.tree.add_vertex({real_field(v, "x"), real_field(v, "y")}, role == "terminal" ? Role::terminal : Role::steiner,
                        v.value("label", ""));
  }
  const int n = static_cast<int>(out.tree.vertices.size());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("edge must be a pair of vertex indices");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw ParseError("edge index out of range");
    out.tree.add_edge(a, b);
  }
  if (j.contains("family")) out.family = family_from_json(j.at("family"));
  return out;
}

std::string record_json(const ResultRecord& r) {
  if (!std::isfinite(r.length) || r.length < 0.0) throw ParseError("record length must be finite and non-negative");
  json j{{"instance", r.instance_id},
         {"method", r.method},
         {"length", format_real(r.length)},
         {"co_optima", r.co_optima},
         {"wall_time_s", format_fixed(r.wall_time, 6)}};
  return j.dump();
}

std::string orbit_csv(const dynamics::DynamicsParams& p, const dynamics::Orbit& orbit) {
  std::string out = "k,nu,mu,branch\n";
  for (std::size_t i = 0; i < orbit.values.size(); ++i) {
    const int k = orbit.first_index + static_cast<int>(i);
    const double nu = orbit.values[i];
    const char* branch = std::abs(nu - p.t_star) <= 1e-12 ? "forbidden" : nu < p.t_star ? "q+" : "q-";
    out += std::to_string(k) + "," + format_real(nu) + "," + format_real(dynamics::mu_from_nu(p, k, nu)) + "," +
           branch + "\n";
  }
  out += std::string("status,") + dynamics::to_string(orbit.status) + ",steps," +
         std::to_string(orbit.values.size()) + "\n";
  return out;
}

std::string render_svg(const EmbeddedTree& tree, const SvgOptions& opt) {
  const double w = opt.width, h = opt.height, margin = 20.0;
  double minx = 0.0, maxx = 1.0, miny = -0.5, maxy = 0.5;
  bool any = false;
  auto grow = [&](const Point& p) {
    if (!any) {
      minx = maxx = p.x;
      miny = maxy = p.y;
      any = true;
    }
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  };
  for (const auto& v : tree.vertices) grow(v.pos);
  double reach = 0.0;
  for (const auto& v : tree.vertices) reach = std::max(reach, v.pos.norm());
  std::vector<std::pair<Point, Point>> sides;
  if (opt.alpha && any) {
    const double r = reach * 1.05;
    for (double sgn : {1.0, -1.0}) {
      const Point end = unit_at(sgn * *opt.alpha) * r;
      sides.push_back({{0.0, 0.0}, end});
      grow({0.0, 0.0});
      grow(end);
    }
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-300});
  const double scale = std::min((w - 2 * margin) / std::max(maxx - minx, span * 1e-9),
                                (h - 2 * margin) / std::max(maxy - miny, span * 1e-9));
  auto X = [&](const Point& p) { return format_fixed(margin + (p.x - minx) * scale, 6); };
  auto Y = [&](const Point& p) { return format_fixed(h - margin - (p.y - miny) * scale, 6); };
  auto line = [&](Point a, Point b, const char* cls) {
    // Endpoint order must not depend on how the edge was stored.
    if (std::pair(b.x, b.y) < std::pair(a.x, a.y)) std::swap(a, b);
    return std::string("<line class=\"") + cls + "\" x1=\"" + X(a) + "\" y1=\"" + Y(a) + "\" x2=\"" + X(b) +
           "\" y2=\"" + Y(b) + "\"/>";
  };
  std::vector<std::string> g_sides, g_edges, g_terms, g_steiner;
  for (auto [a, b] : sides) g_sides.push_back(line(a, b, "side"));
  for (auto [a, b] : tree.edges) g_edges.push_back(line(tree.vertices[a].pos, tree.vertices[b].pos, "edge"));
  for (const auto& v : tree.vertices) {
    const std::string c = "<circle class=\"" + std::string(v.role == Role::terminal ? "terminal" : "steiner") +
                          "\" cx=\"" + X(v.pos) + "\" cy=\"" + Y(v.pos) + "\" r=\"" +
                          (v.role == Role::terminal ? "3" : "1.5") + "\"/>";
    (v.role == Role::terminal ? g_terms : g_steiner).push_back(c);
  }
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opt.width) +
         "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  out += "<style>.side{stroke:#999999;stroke-width:1}.edge{stroke:#000000;stroke-width:1.2}"
         ".terminal{fill:#cc0000}.steiner{fill:#0033cc}</style>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (auto* g : {&g_sides, &g_edges, &g_terms, &g_steiner}) {
    std::sort(g->begin(), g->end());
    for (const auto& e : *g) out += e + "\n";
  }
  out += "</svg>\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place: " + path);
  }
}

}  // namespace steiner_ladder::io
