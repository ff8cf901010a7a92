#pragma once

// Good presentations: one automorphism after which a fixed generator has zero
// exponent sum in every relator.

#include <cstddef>
#include <vector>

#include "bpg/euclid.hpp"
#include "bpg/nielsen.hpp"
#include "bpg/presentation.hpp"

namespace bpg {

struct GoodPresentation {
  Presentation base;
  Generator t_index = 0;
  // Carries the original presentation onto `base`.
  Automorphism automorphism{0};
  // One trace per relator: the full automorphism replayed on that relator.
  // final_length is the cyclically reduced length in `base`.
  std::vector<GrowthTrace> traces;
};

struct MakeGoodOptions {
  // Return the identity when the exponent matrix already has an all-zero
  // column. The result then need not be triangular.
  bool shortcut_zero_column = false;
  // Nonzero: throw LengthLimitExceeded rather than let any working relator
  // grow past this many letters.
  std::size_t max_length = 0;
};

// For relator k (0-based), Euclid runs along generators 0..n-k-1, clearing
// X_0..X_{n-k-2} and leaving the gcd in slot n-k-1. Moves for relator k touch
// only those generators, so zeros placed in earlier relators survive. The
// result has X_i(r_k) = 0 for i <= n-k-2 and t_index = 0. Throws NotBP when
// n < m + 2.
GoodPresentation make_good(const Presentation& p,
                           const MakeGoodOptions& options = {});

// Replays the automorphism on `original`, compares relators word for word, and
// checks column t_index of the exponent matrix is zero.
bool verify_good(const GoodPresentation& g, const Presentation& original);

// X_i(r_k) = 0 for all i <= n-k-2, 0-based.
bool has_triangular_shape(const Presentation& p);

}  // namespace bpg
