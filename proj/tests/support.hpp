#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "steiner_ladder/tree.hpp"

namespace test_support {

// STEINER_LADDER_SEED overrides the default so a failing draw can be replayed.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("STEINER_LADDER_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261017;
}

inline steiner_ladder::TerminalSet random_terminals(std::mt19937_64& rng, int n, double min_gap = 0.05) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  steiner_ladder::TerminalSet ts;
  while (static_cast<int>(ts.size()) < n) {
    const steiner_ladder::Point p{u(rng), u(rng)};
    bool ok = true;
    for (const auto& t : ts.terminals) ok = ok && steiner_ladder::distance(t.pos, p) >= min_gap;
    if (ok) ts.terminals.push_back({"t" + std::to_string(ts.size()), p});
  }
  return ts;
}

}  // namespace test_support
