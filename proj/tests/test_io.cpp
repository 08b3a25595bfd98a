#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "steiner_ladder/cli.hpp"
#include "steiner_ladder/io.hpp"
#include "steiner_ladder/ladder.hpp"
#include "support.hpp"

using namespace steiner_ladder;
namespace fs = std::filesystem;

namespace {

const std::string kData = STEINER_LADDER_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("steiner_ladder_io_" + std::to_string(test_support::seed()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("reals") {
  std::mt19937_64 rng(test_support::seed());
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(io::parse_real(io::format_real(v)) == v);
  }
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_fixed(-1e-9, 6) == "0.000000");
  CHECK_THROWS_AS(io::parse_real("1,5"), io::ParseError);
  CHECK_THROWS_AS(io::parse_real("abc"), io::ParseError);
  CHECK_THROWS_AS(io::parse_real("1.0x"), io::ParseError);
  CHECK_THROWS_AS(io::format_real(NAN), io::ParseError);
  CHECK(io::parse_angle("pi/36") == kPi / 36);
  CHECK(io::parse_angle("2*pi/3") == doctest::Approx(kTwoThirdsPi).epsilon(1e-15));
  CHECK(io::parse_angle("5deg") == doctest::Approx(kPi / 36).epsilon(1e-15));
  CHECK(io::parse_angle("0.25") == 0.25);
  CHECK_THROWS_AS(io::parse_angle("pi/0"), io::ParseError);
}

TEST_CASE("instance round trip") {
  std::mt19937_64 rng(test_support::seed());
  const TerminalSet ts = test_support::random_terminals(rng, 7);
  const TerminalSet back = io::parse_instance(io::serialize_instance(ts));
  REQUIRE(back.size() == ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(back.terminals[i].label == ts.terminals[i].label);
    CHECK(back.terminals[i].pos == ts.terminals[i].pos);
  }
  CHECK_FALSE(back.family);

  const TerminalSet a0 = ladder::build_input({kPi / 36, 0.5, 4}, Family::A0);
  const TerminalSet a0b = io::parse_instance(io::serialize_instance(a0));
  REQUIRE(a0b.family);
  CHECK(a0b.family->family == Family::A0);
  CHECK(a0b.segment == a0.segment);
  for (std::size_t i = 0; i < a0.size(); ++i) CHECK(a0b.terminals[i].pos == a0.terminals[i].pos);
}

TEST_CASE("instance validation") {
  const std::string dup = R"({"schema_version":1,"terminals":[{"label":"a","x":"0","y":"0"},{"label":"a","x":"1","y":"0"}]})";
  CHECK_THROWS_AS(io::parse_instance(dup), io::ParseError);
  const std::string numbers = R"({"schema_version":1,"terminals":[{"label":"a","x":0,"y":0.5}]})";
  CHECK(io::parse_instance(numbers).terminals[0].pos == Point{0, 0.5});
  CHECK_THROWS_AS(io::parse_instance(R"({"terminals":[]})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_instance("[1,2"), io::ParseError);

  TerminalSet a1 = ladder::build_input({kPi / 36, 0.5, 2}, Family::A1);
  a1.terminals[1].pos.x += 1e-9;
  CHECK_THROWS_AS(io::parse_instance(io::serialize_instance(a1)), io::ParseError);
}

TEST_CASE("tree round trip and records") {
  const EmbeddedTree t = ladder::build_ladder_tree_A1({kPi / 36, 0.5, 5}, {false, true});
  const io::TreeFile f = io::parse_tree(io::serialize_tree(t, FamilyDescriptor{Family::A1, kPi / 36, 0.5, 5}));
  REQUIRE(f.tree.vertices.size() == t.vertices.size());
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    CHECK(f.tree.vertices[i].pos == t.vertices[i].pos);
    CHECK(f.tree.vertices[i].role == t.vertices[i].role);
    CHECK(f.tree.vertices[i].label == t.vertices[i].label);
  }
  CHECK(f.tree.edges == t.edges);
  CHECK(f.family);
  CHECK_THROWS_AS(io::parse_tree(R"({"schema_version":1,"vertices":[],"edges":[[0,1]]})"), io::ParseError);

  const std::string rec = io::record_json({"sq", "exact", 1.0 + std::sqrt(3.0), 2, 0.25});
  CHECK(rec.find("\"length\":\"2.7320508075688772\"") != std::string::npos);
  CHECK_THROWS_AS(io::record_json({"x", "exact", -1.0, 1, 0.0}), io::ParseError);
}

TEST_CASE("svg output") {
  const EmbeddedTree t = ladder::build_ladder_tree_A0({kPi / 36, 0.5, 8}, ladder::TreeSide::upper);
  io::SvgOptions opt;
  opt.alpha = kPi / 36;
  const std::string a = io::render_svg(t, opt);
  CHECK(a == io::render_svg(t, opt));
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("version=\"1.1\"") != std::string::npos);
  CHECK(a.find("class=\"side\"") < a.find("class=\"edge\""));
  CHECK(a.find("class=\"edge\"") < a.find("class=\"terminal\""));
  CHECK(a.find("class=\"terminal\"") < a.find("class=\"steiner\""));

  // Shuffled vertex order changes nothing.
  EmbeddedTree r;
  const int n = static_cast<int>(t.vertices.size());
  for (int i = n - 1; i >= 0; --i) r.vertices.push_back(t.vertices[i]);
  for (auto it = t.edges.rbegin(); it != t.edges.rend(); ++it) r.add_edge(n - 1 - it->second, n - 1 - it->first);
  CHECK(io::render_svg(r, opt) == a);

  const std::string empty = io::render_svg({}, {});
  CHECK(empty.find("<svg") != std::string::npos);
  CHECK(empty.find("</svg>") != std::string::npos);
  CHECK(empty.find("<line") == std::string::npos);
}

TEST_CASE("orbit csv") {
  const auto p = dynamics::derive_params(kPi / 36, 0.5, 0.0);
  const std::string csv = io::orbit_csv(p, dynamics::cycle_orbit(p, 1.0 / 6, 2, 4));
  CHECK(csv.rfind("k,nu,mu,branch\n0,0.16666666666666666,", 0) == 0);
  CHECK(csv.find("\n1,0.83333333333333337,") != std::string::npos);
  CHECK(csv.find("status,ok,steps,4\n") != std::string::npos);
}

TEST_CASE("command line") {
  const fs::path dir = scratch_dir();
  const std::string tree = (dir / "tree.json").string();

  Run r = run_cli({"solve", kData + "/square.json", "--out", tree});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"co_optima\":2") != std::string::npos);
  CHECK(io::parse_tree(io::read_file(tree)).tree.length() == doctest::Approx(1 + std::sqrt(3.0)).epsilon(1e-12));

  r = run_cli({"solve", kData + "/two_points.json"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"length\":\"5\"") != std::string::npos);

  r = run_cli({"solve", kData + "/a5.json"});
  CHECK(r.code == cli::kExitOk);
  CHECK(io::parse_tree(r.out.substr(0, r.out.rfind("}\n{") + 2)).tree.vertices.size() == 8);

  const std::string absent = (dir / "absent.json").string();
  fs::remove(absent);
  CHECK(run_cli({"solve", kData + "/a1_depth5.json", "--out", absent}).code == cli::kExitSize);
  CHECK_FALSE(fs::exists(absent));
  const std::string broken = (dir / "broken.json").string();
  io::write_atomic(broken, "{\"schema_version\": 1, \"terminals\": [");
  CHECK(run_cli({"solve", broken, "--out", absent}).code == cli::kExitParse);
  CHECK_FALSE(fs::exists(absent));
  CHECK(run_cli({"solve"}).code == cli::kExitParse);
  CHECK(run_cli({"nonsense"}).code == cli::kExitParse);

  r = run_cli({"construct", "--family", "A0", "--depth", "20", "--out", tree});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"method\":\"maxwell\"") != std::string::npos);
  r = run_cli({"construct", "--family", "A1", "--depth", "9", "--word", "0101"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\"block_terminals\":[5,5,5,5]") != std::string::npos);
  CHECK(run_cli({"construct", "--alpha", "pi/6"}).code == cli::kExitCondition);
  CHECK(run_cli({"construct", "--alpha", "pie"}).code == cli::kExitParse);

  r = run_cli({"dynamics", "--beta", "0", "--periodic", "2", "--steps", "6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\n4,0.16666666666666666,") != std::string::npos);
  CHECK(r.out.find("\n5,0.83333333333333337,") != std::string::npos);
  r = run_cli({"dynamics", "--beta", "2deg", "--t0", "0.3", "--steps", "50"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("status,escaped,steps,") != std::string::npos);
  r = run_cli({"dynamics", "--beta", "pi/72", "--t0", "0.9", "--steps", "30"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("status,") != std::string::npos);

  r = run_cli({"region", "--alpha-steps", "5", "--lambda-steps", "4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 21);

  const std::string svg1 = (dir / "a.svg").string(), svg2 = (dir / "b.svg").string();
  CHECK(run_cli({"render", tree, "--out", svg1}).code == cli::kExitOk);
  CHECK(run_cli({"render", tree, "--out", svg2}).code == cli::kExitOk);
  CHECK(io::read_file(svg1) == io::read_file(svg2));
  CHECK(run_cli({"render", broken}).code == cli::kExitParse);

  // Exit codes survive the real process boundary.
  const std::string bin = STEINER_LADDER_CLI;
  const int status = std::system((bin + " construct --alpha pi/6 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == cli::kExitCondition);
  fs::remove_all(dir);
}
