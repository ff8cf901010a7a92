#pragma once

// Random inputs shared by the property and acceptance tests.

#include <random>
#include <vector>

#include "bpg/nielsen.hpp"
#include "bpg/presentation.hpp"
#include "bpg/word.hpp"

namespace bpg::testing {

inline NielsenMove random_move(std::mt19937_64& rng, std::size_t rank,
                               std::int64_t max_exponent = 2) {
  const auto i = static_cast<Generator>(uniform_below(rng, rank));
  auto j = static_cast<Generator>(uniform_below(rng, rank - 1));
  if (j >= i) ++j;
  switch (uniform_below(rng, 3)) {
    case 0:
      return Inv{i};
    case 1: {
      auto e = static_cast<std::int64_t>(uniform_below(rng, 2 * max_exponent)) - max_exponent;
      if (e >= 0) ++e;
      return RightMult{i, j, e};
    }
    default:
      return Swap{i, j};
  }
}

inline Automorphism random_automorphism(std::mt19937_64& rng, std::size_t rank,
                                        std::size_t max_moves,
                                        std::int64_t max_exponent = 2) {
  Automorphism a(rank);
  const auto n = uniform_below(rng, max_moves + 1);
  for (std::size_t k = 0; k < n; ++k) a.push(random_move(rng, rank, max_exponent));
  return a;
}

// Cyclically reduced nonempty relators over `rank` generators.
inline Presentation random_presentation(std::mt19937_64& rng, std::size_t rank,
                                        std::size_t relators, std::size_t max_length) {
  std::vector<std::string> names;
  for (std::size_t g = 0; g < rank; ++g) names.push_back("x" + std::to_string(g));
  std::vector<Word> rels;
  while (rels.size() < relators) {
    const Word w = cyclic_reduce(random_reduced_word(rank, 1 + uniform_below(rng, max_length), rng));
    if (!w.empty()) rels.push_back(w);
  }
  return Presentation(std::move(names), std::move(rels));
}

}  // namespace bpg::testing
