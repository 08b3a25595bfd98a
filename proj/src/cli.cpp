#include "steiner_ladder/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "steiner_ladder/analysis.hpp"
#include "steiner_ladder/dynamics.hpp"
#include "steiner_ladder/io.hpp"
#include "steiner_ladder/ladder.hpp"
#include "steiner_ladder/melzak.hpp"
#include "steiner_ladder/topology.hpp"

namespace steiner_ladder::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Text flags are parsed here rather than by CLI11 so that angles accept "pi/36".
struct Shared {
  std::string alpha = "pi/36";
  std::string lambda = "0.5";
  int depth = 5;
  std::string out;
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") out << content;
  else io::write_atomic(path, content);
}

std::string instance_id(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_solve(const std::string& in_path, double tol, const std::string& out_path, std::ostream& out) {
  const TerminalSet ts = io::parse_instance(io::read_file(in_path));
  if (ts.size() < 2 || ts.size() > 9) throw OutOfRange("solve: instance must have 2 to 9 terminals");
  const auto t0 = Clock::now();
  const melzak::SteinerSolution sol = melzak::solve_exact(ts, tol);
  const double dt = seconds_since(t0);
  emit(out_path, io::serialize_tree(sol.best, ts.family), out);
  out << io::record_json({instance_id(in_path), "exact", sol.best.length(), static_cast<int>(sol.co_optima.size()), dt})
      << "\n";
  return kExitOk;
}

int cmd_construct(const Shared& s, const std::string& family, const std::string& word, const std::string& side,
                  std::ostream& out) {
  const ladder::LadderParams params{io::parse_angle(s.alpha), io::parse_real(s.lambda), s.depth};
  params.validate();
  const auto t0 = Clock::now();
  EmbeddedTree tree;
  FamilyDescriptor desc{Family::A1, params.alpha, params.lambda, params.depth};
  double closed = 0.0;
  std::string id;
  if (family == "A1") {
    const ladder::MirrorWord w = word.empty() ? ladder::MirrorWord(ladder::block_count(params.depth), false)
                                              : ladder::parse_word(word);
    tree = ladder::build_ladder_tree_A1(params, w);
    closed = ladder::closed_form_length_A1(params.alpha, params.lambda);
    id = "A1-K" + std::to_string(params.depth) + "-" + ladder::word_string(w);
  } else if (family == "A0") {
    if (side != "upper" && side != "lower") throw io::ParseError("--side must be upper or lower");
    tree = ladder::build_ladder_tree_A0(params, side == "upper" ? ladder::TreeSide::upper : ladder::TreeSide::lower);
    desc.family = Family::A0;
    closed = ladder::closed_form_length_A0(params.alpha, params.lambda);
    id = "A0-K" + std::to_string(params.depth) + "-" + side;
  } else {
    throw io::ParseError("--family must be A1 or A0");
  }
  const double dt = seconds_since(t0);
  emit(s.out, io::serialize_tree(tree, desc), out);

  const double len = tree.length();
  out << io::record_json({id, "edge_sum", len, 1, dt}) << "\n";
  out << io::record_json({id, "closed_form", closed, 1, 0.0}) << "\n";
  const analysis::Classification cls = analysis::classify(tree);
  if (cls != analysis::Classification::neither)
    out << io::record_json({id, "maxwell", analysis::maxwell_length(tree).length, 1, 0.0}) << "\n";
  nlohmann::json report;
  report["classification"] = analysis::to_string(cls);
  report["tail_bound"] = io::format_real(ladder::tail_bound(params.lambda, params.depth, closed));
  report["decomposable"] = analysis::is_decomposable(tree);
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : analysis::block_decompose(tree)) {
    int terms = 0;
    for (const auto& v : b.vertices) terms += v.role == Role::terminal;
    blocks.push_back(terms);
  }
  report["block_terminals"] = blocks;
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_dynamics(const Shared& s, const std::string& beta_s, const std::optional<std::string>& t0_s, int period,
                 int steps, const std::string& tree_path, std::ostream& out) {
  const double alpha = io::parse_angle(s.alpha);
  const double lambda = io::parse_real(s.lambda);
  const dynamics::DynamicsParams p = dynamics::derive_params(alpha, lambda, io::parse_angle(beta_s));
  if (steps < 1) throw OutOfRange("--steps must be positive");
  dynamics::Orbit orbit;
  if (period > 0) {
    const auto pts = dynamics::periodic_points(p, period);
    if (pts.empty()) throw HypothesisViolation("no periodic point of period " + std::to_string(period));
    orbit = dynamics::cycle_orbit(p, pts.front(), period, steps);
  } else {
    if (!t0_s) throw io::ParseError("dynamics needs --t0 or --periodic");
    orbit = dynamics::iterate(p, io::parse_real(*t0_s), steps, dynamics::Direction::forward);
  }
  emit(s.out, io::orbit_csv(p, orbit), out);
  if (!tree_path.empty()) {
    const int K = std::min(s.depth, static_cast<int>(orbit.values.size()) - 1);
    const EmbeddedTree tree = dynamics::tree_from_orbit(p, {alpha, lambda, K}, orbit, K);
    io::write_atomic(tree_path, io::serialize_tree(tree));
  }
  return kExitOk;
}

int cmd_region(int alpha_steps, int lambda_steps, const std::string& out_path, std::ostream& out) {
  if (alpha_steps < 1 || lambda_steps < 1) throw OutOfRange("grid sizes must be positive");
  std::string csv = "alpha,lambda,condition,appendix\n";
  int violations = 0;
  for (int i = 1; i <= alpha_steps; ++i) {
    // Open at pi/6, closed at lambda = 1/2.
    const double a = (kPi / 6.0) * i / (alpha_steps + 1);
    for (int j = 1; j <= lambda_steps; ++j) {
      const double l = 0.5 * j / lambda_steps;
      const bool c = ladder::condition_holds(a, l);
      const bool ap = ladder::appendix_predicate(a, l);
      violations += c && !ap;
      csv += io::format_real(a) + "," + io::format_real(l) + "," + (c ? "1" : "0") + "," + (ap ? "1" : "0") + "\n";
    }
  }
  emit(out_path, csv, out);
  return violations == 0 ? kExitOk : kExitFailure;
}

int cmd_render(const std::string& tree_path, const std::optional<std::string>& alpha_s, int width, int height,
               const std::string& out_path, std::ostream& out) {
  const io::TreeFile tf = io::parse_tree(io::read_file(tree_path));
  io::SvgOptions opt;
  opt.width = width;
  opt.height = height;
  if (alpha_s) opt.alpha = io::parse_angle(*alpha_s);
  else if (tf.family) opt.alpha = tf.family->alpha;
  emit(out_path, io::render_svg(tf.tree, opt), out);
  return kExitOk;
}

int cmd_selftest(std::ostream& out) {
  int failed = 0;
  auto report = [&](const char* name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    failed += !ok;
  };
  report("topology count n=6", topology::enumerate_full_topologies(6).size() == 105);
  {
    TerminalSet sq{{{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}}, {}, {}};
    const auto sol = melzak::solve_exact(sq);
    report("unit square", std::abs(sol.best.length() - (1.0 + kSqrt3)) < 1e-9 && sol.co_optima.size() == 2);
  }
  {
    const ladder::LadderParams lp{kPi / 36.0, 0.5, 3};
    const auto sol = melzak::solve_exact(
        ladder::build_input(lp, Family::A1).subset({"A1", "A2", "A3", "B1", "B2"}));
    const double expect = (1.0 - 0.25) * ladder::closed_form_length_A1(lp.alpha, lp.lambda);
    report("five-terminal block", std::abs(sol.best.length() - expect) <= 1e-9 * expect &&
                                      analysis::classify(sol.best) == analysis::Classification::full);
  }
  {
    const auto p = dynamics::derive_params(kPi / 36.0, 0.5, 0.0);
    const auto pts = dynamics::periodic_points(p, 2);
    report("period-two points", pts.size() == 2 && pts[0] == 1.0 / 6.0 && pts[1] == 5.0 / 6.0);
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steiner trees on ladders of points inside an angle", "steiner-ladder"};
  app.require_subcommand(1);
  Shared s;
  double tol = 1e-9;
  std::string in_path, family = "A1", word, side = "upper", beta = "0", tree_path;
  std::optional<std::string> t0, render_alpha;
  int period = 0, steps = 20, alpha_steps = 100, lambda_steps = 100, width = 800, height = 600;

  auto add_angle = [&](CLI::App* c) {
    c->add_option("--alpha", s.alpha, "Half-angle: real, pi/N, M*pi/N or Xdeg")->capture_default_str();
    c->add_option("--lambda", s.lambda, "Ratio of consecutive terminals")->capture_default_str();
    c->add_option("--depth", s.depth, "Number of terminal pairs")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Exact Steiner tree of an instance file");
  solve->add_option("instance", in_path, "Instance JSON")->required();
  solve->add_option("--tol", tol, "Co-optimum tolerance")->capture_default_str();
  solve->add_option("--out", s.out, "Tree JSON output");

  auto* construct = app.add_subcommand("construct", "Build a ladder tree");
  add_angle(construct);
  construct->add_option("--family", family, "A1 or A0")->capture_default_str();
  construct->add_option("--word", word, "Mirror word for A1, one bit per block");
  construct->add_option("--side", side, "upper or lower for A0")->capture_default_str();
  construct->add_option("--out", s.out, "Tree JSON output");

  auto* dyn = app.add_subcommand("dynamics", "Orbit of the interval map");
  add_angle(dyn);
  dyn->add_option("--beta", beta, "Wind-rose turn")->capture_default_str();
  dyn->add_option("--t0", t0, "Start point in [0, 1]");
  dyn->add_option("--periodic", period, "Follow a periodic point of this period");
  dyn->add_option("--steps", steps, "Orbit length")->capture_default_str();
  dyn->add_option("--tree", tree_path, "Also write the tree built from the orbit");
  dyn->add_option("--out", s.out, "Orbit CSV output");

  auto* region = app.add_subcommand("region", "Grid of the parameter predicates");
  region->add_option("--alpha-steps", alpha_steps)->capture_default_str();
  region->add_option("--lambda-steps", lambda_steps)->capture_default_str();
  region->add_option("--out", s.out, "CSV output");

  auto* render = app.add_subcommand("render", "SVG figure of a tree file");
  render->add_option("tree", tree_path, "Tree JSON")->required();
  render->add_option("--alpha", render_alpha, "Draw the angle sides");
  render->add_option("--width", width)->capture_default_str();
  render->add_option("--height", height)->capture_default_str();
  render->add_option("--out", s.out, "SVG output");

  auto* selftest = app.add_subcommand("selftest", "Quick numerical checks");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (solve->parsed()) return cmd_solve(in_path, tol, s.out, out);
    if (construct->parsed()) return cmd_construct(s, family, word, side, out);
    if (dyn->parsed()) return cmd_dynamics(s, beta, t0, period, steps, tree_path, out);
    if (region->parsed()) return cmd_region(alpha_steps, lambda_steps, s.out, out);
    if (render->parsed()) return cmd_render(tree_path, render_alpha, width, height, s.out, out);
    if (selftest->parsed()) return cmd_selftest(out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const HypothesisViolation& e) {
    err << "condition violated: " << e.what() << "\n";
    return kExitCondition;
  } catch (const OutOfRange& e) {
    err << "size error: " << e.what() << "\n";
    return kExitSize;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace steiner_ladder::cli
