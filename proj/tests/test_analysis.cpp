#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "steiner_ladder/analysis.hpp"
#include "steiner_ladder/ladder.hpp"
#include "steiner_ladder/melzak.hpp"
#include "steiner_ladder/topology.hpp"
#include "support.hpp"

using namespace steiner_ladder;
using namespace steiner_ladder::analysis;

namespace {

EmbeddedTree tripod(Point centre = {}, double spoke = 1.0) {
  EmbeddedTree t;
  const int s = t.add_vertex(centre, Role::steiner, "s");
  for (int i = 0; i < 3; ++i) t.add_edge(s, t.add_vertex(centre + unit_at(0.3 + i * kTwoThirdsPi) * spoke, Role::terminal, "t" + std::to_string(i)));
  return t;
}

TerminalSet terminals_of(const EmbeddedTree& t) {
  TerminalSet ts;
  for (const auto& v : t.vertices)
    if (v.role == Role::terminal) ts.terminals.push_back({v.label, v.pos});
  return ts;
}

}  // namespace

TEST_CASE("regular tripod") {
  const EmbeddedTree t = tripod();
  const MaxwellResult m = maxwell_length(t);
  CHECK(m.length == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(m.residual < 1e-14);
  CHECK(classify(t) == Classification::full);
  CHECK(wind_rose(t).directions.size() == 3);
  CHECK(local_min_gradient(t) < 1e-12);
  CHECK_FALSE(is_decomposable(t));
  CHECK(validate_steiner_geometry(t, terminals_of(t)).ok());
}

TEST_CASE("single segment") {
  EmbeddedTree t;
  t.add_edge(t.add_vertex({0, 0}, Role::terminal, "p"), t.add_vertex({2, 1}, Role::terminal, "q"));
  CHECK(maxwell_length(t).length == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK_FALSE(is_decomposable(t));
  CHECK(wind_rose(t).directions.size() == 1);
}

TEST_CASE("negative controls") {
  SUBCASE("Steiner angle of 110 degrees") {
    EmbeddedTree t;
    const int s = t.add_vertex({0, 0}, Role::steiner);
    const double deg = kPi / 180.0;
    for (double a : {0.0, 110 * deg, 235 * deg}) t.add_edge(s, t.add_vertex(unit_at(a), Role::terminal, std::to_string(a)));
    const ValidityReport r = validate_steiner_geometry(t, terminals_of(t));
    CHECK(r.max_angle_violation == doctest::Approx(kTwoThirdsPi - 110 * deg).epsilon(1e-9));
    CHECK_FALSE(r.ok());
    CHECK(classify(t) == Classification::neither);
    CHECK_THROWS_AS(maxwell_length(t), DegenerateInput);
  }
  SUBCASE("vertex outside the hull") {
    EmbeddedTree t = tripod();
    const TerminalSet ts = terminals_of(t);
    const int far = t.add_vertex({5, 5}, Role::steiner);
    t.add_edge(0, far);
    const ValidityReport r = validate_steiner_geometry(t, ts);
    CHECK_FALSE(r.inside_hull);
    CHECK(r.bad_steiner_degrees == 2);
    CHECK_FALSE(r.ok());
  }
  SUBCASE("cycle and disconnection") {
    EmbeddedTree t = tripod();
    t.add_edge(1, 2);
    CHECK_FALSE(validate_steiner_geometry(t, terminals_of(t)).acyclic);
    EmbeddedTree u = tripod();
    u.add_vertex({0.1, 0.1}, Role::terminal, "lonely");
    CHECK_FALSE(validate_steiner_geometry(u, terminals_of(u)).connected);
  }
  SUBCASE("terminal not in the set") {
    EmbeddedTree t = tripod();
    TerminalSet ts = terminals_of(t);
    ts.terminals[0].pos = ts.terminals[0].pos + Point{0.1, 0};
    CHECK(validate_steiner_geometry(t, ts).unknown_terminals == 1);
  }
}

TEST_CASE("gradient matches finite differences of the length") {
  std::mt19937_64 rng(test_support::seed());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    EmbeddedTree t = tripod();
    const Point kick{u(rng) * 1e-3, u(rng) * 1e-3};
    t.vertices[0].pos = t.vertices[0].pos + kick;
    // Central difference of the length in x and y at the Steiner vertex.
    const double h = 1e-6;
    auto length_at = [&](Point p) {
      EmbeddedTree c = t;
      c.vertices[0].pos = p;
      return c.length();
    };
    const Point p = t.vertices[0].pos;
    const Point fd{(length_at(p + Point{h, 0}) - length_at(p - Point{h, 0})) / (2 * h),
                   (length_at(p + Point{0, h}) - length_at(p - Point{0, h})) / (2 * h)};
    CHECK(local_min_gradient(t) == doctest::Approx(fd.norm()).epsilon(1e-5));
    CHECK(local_min_gradient(t) > 1e-5);
    CHECK(local_min_gradient(t) < 1e-2);
  }
}

TEST_CASE("realized topologies keep Maxwell and gradient properties") {
  std::mt19937_64 rng(test_support::seed() + 7);
  std::uniform_int_distribution<int> size(4, 6);
  int done = 0, attempts = 0;
  while (done < 60 && attempts < 5000) {
    ++attempts;
    const int n = size(rng);
    const TerminalSet ts = test_support::random_terminals(rng, n);
    const auto topos = topology::enumerate_full_topologies(n);
    std::uniform_int_distribution<std::size_t> pick(0, topos.size() - 1);
    const auto tree = melzak::realize_full_topology(ts, topos[pick(rng)]);
    if (!tree) continue;
    ++done;
    const MaxwellResult m = maxwell_length(*tree);
    const double len = tree->length();
    CHECK(std::abs(m.length - len) < 1e-10 * len);
    CHECK(m.residual < 1e-9 * len);
    CHECK(local_min_gradient(*tree) < 1e-9);
    CHECK(classify(*tree) == Classification::full);
    CHECK_FALSE(is_decomposable(*tree));
    CHECK(wind_rose(*tree).directions.size() <= 3);
  }
  CHECK(done == 60);
}

TEST_CASE("block decomposition of a ladder tree") {
  const ladder::LadderParams lp{kPi / 36.0, 0.5, 5};
  const EmbeddedTree t = ladder::build_ladder_tree_A1(lp, {false, false});
  CHECK(is_decomposable(t));
  CHECK(classify(t) == Classification::full_star);
  const auto blocks = block_decompose(t);
  REQUIRE(blocks.size() == 2);
  double sum = 0.0;
  for (const auto& b : blocks) {
    sum += b.length();
    int terms = 0;
    for (const auto& v : b.vertices) terms += v.role == Role::terminal;
    CHECK(terms == 5);
    CHECK(classify(b) == Classification::full);
    CHECK(wind_rose(b).directions.size() == 3);
  }
  CHECK(std::abs(sum - t.length()) < 1e-12 * t.length());
}

TEST_CASE("tree comparison") {
  const EmbeddedTree t = tripod({0.2, 0.1});
  CHECK(trees_equal(t, t, 0.0));
  CHECK(trees_mirror_equal(t, reflected(t, {0, 1}, {1, 2}), {0, 1}, {1, 2}, 1e-12));
  CHECK_FALSE(trees_equal(t, tripod({0.2, 0.1}, 1.01), 1e-6));

  const ladder::LadderParams lp{kPi / 36.0, 0.5, 9};
  const EmbeddedTree a = ladder::build_ladder_tree_A1(lp, ladder::parse_word("0100"));
  const EmbeddedTree b = ladder::build_ladder_tree_A1(lp, ladder::parse_word("0010"));
  CHECK_FALSE(trees_mirror_equal(a, b, {0, 0}, {1, 0}, 1e-9));
  CHECK_FALSE(trees_equal(a, b, 1e-9));
  CHECK(a.length() == doctest::Approx(b.length()).epsilon(1e-12));
}

TEST_CASE("hull and distance helpers") {
  const auto hull = convex_hull({{0, 0}, {1, 0}, {0.5, 0.2}, {1, 1}, {0, 1}, {0.5, 0}});
  CHECK(hull.size() == 4);
  CHECK(distance_to_tree({0, 3}, tripod()) == doctest::Approx(distance({0, 3}, unit_at(0.3 + kTwoThirdsPi))).epsilon(0.5));
  CHECK(distance_to_tree({0, 0}, tripod()) == 0.0);
}
