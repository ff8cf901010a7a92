#pragma once

// Finite presentations <S | R> and their text format.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpg/matrix.hpp"
#include "bpg/nielsen.hpp"
#include "bpg/word.hpp"

namespace bpg {

// Generator names are surface syntax only; relators refer to generators by
// position. Relators are stored cyclically reduced and are never empty.
class Presentation {
 public:
  Presentation() = default;
  // Throws MalformedInput on duplicate or invalid names, empty relators, or
  // relators using generators outside the rank.
  Presentation(std::vector<std::string> names, std::vector<Word> relators);

  std::size_t rank() const { return names_.size(); }
  std::size_t relator_count() const { return relators_.size(); }
  std::span<const std::string> names() const { return names_; }
  std::span<const Word> relators() const { return relators_; }
  std::size_t max_relator_length() const;
  // rank - relator_count
  std::int64_t deficiency() const;

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

// Format:
//   generators: a b c
//   relator: a b a^-1 b^-1
// `#` starts a comment, blank lines are ignored. Throws ParseError.
Presentation parse_presentation(std::string_view text);

std::string serialize(const Presentation& p);
// Same format for arbitrary names and relators (used for subgroup output).
std::string serialize_presentation(std::span<const std::string> names,
                                   std::span<const Word> relators);

// Row k is exponent_vector(r_k).
Matrix<std::int64_t> exponent_matrix(std::span<const Word> relators,
                                     std::size_t rank);
Matrix<std::int64_t> exponent_matrix(const Presentation& p);

// At least two more generators than relators.
bool is_bp(const Presentation& p);

// Relators become cyclic_reduce(apply(a, r)); names are kept.
Presentation apply_automorphism(const Presentation& p, const Automorphism& a);

}  // namespace bpg
