#pragma once

// Elementary Nielsen transformations and their finite compositions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "bpg/matrix.hpp"
#include "bpg/word.hpp"

namespace bpg {

// x_i -> x_i^-1
struct Inv {
  Generator i = 0;
  bool operator==(const Inv&) const = default;
};

// x_i -> x_i x_j^e, with i != j and e != 0.
struct RightMult {
  Generator i = 0;
  Generator j = 0;
  std::int64_t e = 1;
  bool operator==(const RightMult&) const = default;
};

// x_i <-> x_j, with i != j.
struct Swap {
  Generator i = 0;
  Generator j = 0;
  bool operator==(const Swap&) const = default;
};

using NielsenMove = std::variant<Inv, RightMult, Swap>;

// Throws MalformedInput on i == j, e == 0 or an index outside `rank`.
void validate_move(const NielsenMove& m, std::size_t rank);

NielsenMove inverse_move(const NielsenMove& m);

// Image of every generator under a single move.
std::vector<Word> move_images(const NielsenMove& m, std::size_t rank);

// Throws RankMismatch if the move or the word does not fit `rank`.
Word apply_move(const NielsenMove& m, const Word& w, std::size_t rank);

// Upper bound on the length of apply_move(m, w): l + |e| * (occurrences of
// x_i) for RightMult, l otherwise. Saturates instead of overflowing.
std::size_t move_length_bound(const NielsenMove& m, const Word& w);

// Moves are applied to a word left to right.
class Automorphism {
 public:
  explicit Automorphism(std::size_t rank) : rank_(rank) {}
  Automorphism(std::size_t rank, std::vector<NielsenMove> moves);

  static Automorphism identity(std::size_t rank) { return Automorphism(rank); }

  std::size_t rank() const { return rank_; }
  std::span<const NielsenMove> moves() const { return moves_; }
  bool is_identity() const { return moves_.empty(); }

  void push(const NielsenMove& m);
  // Appends the moves of `later`, which then run after this one's.
  void append(const Automorphism& later);

  bool operator==(const Automorphism&) const = default;

 private:
  std::size_t rank_;
  std::vector<NielsenMove> moves_;
};

Word apply(const Automorphism& a, const Word& w);
Automorphism inverse(const Automorphism& a);

// M with exponent_vector(apply(a, w)) == M * exponent_vector(w).
Matrix<std::int64_t> abelianized_matrix(const Automorphism& a);

// Rewrites each Swap as the equivalent Inv/RightMult sequence.
Automorphism expand_swaps(const Automorphism& a);

}  // namespace bpg
