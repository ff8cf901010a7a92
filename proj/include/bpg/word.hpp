#pragma once

// Freely reduced words over a finite ranked alphabet.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpg {

using Generator = std::uint32_t;

// A generator or its inverse, packed as 2 * gen + (sign < 0). The packed code
// doubles as the column index of a coset table.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(Generator gen, int sign)
      : code_(2 * gen + (sign < 0 ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr Generator gen() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1u) ? -1 : 1; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Letter pos(Generator g) { return Letter(g, 1); }
constexpr Letter neg(Generator g) { return Letter(g, -1); }

// Freely reduced word. Every constructor reduces its input.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::span<const Letter> letters);

  // g^e as a word.
  static Word power(Generator g, std::int64_t e);

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // One past the largest generator index used, 0 for the empty word.
  std::size_t required_rank() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  struct Reduced {};
  Word(Reduced, std::vector<Letter> letters) : letters_(std::move(letters)) {}

  friend class WordBuilder;
  std::vector<Letter> letters_;
};

// Accumulates letters with free reduction on every push; the stack-based
// reducer behind all word constructors.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(std::size_t reserve) { letters_.reserve(reserve); }

  void push(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
  void append(const Word& w) {
    for (Letter l : w) push(l);
  }
  void append_inverse(const Word& w) {
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      push(it->inverse());
    }
  }

  std::size_t length() const { return letters_.size(); }
  Word build() && { return Word(Word::Reduced{}, std::move(letters_)); }

 private:
  std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
Word concat(const Word& a, const Word& b);
Word invert(const Word& w);
// Strips matching first/last letter pairs until none remain.
Word cyclic_reduce(const Word& w);
Word power(const Word& w, std::int64_t e);

// (X_0(w), ..., X_{rank-1}(w)). Throws MalformedInput if w uses a generator
// outside the rank.
std::vector<std::int64_t> exponent_vector(const Word& w, std::size_t rank);

struct Occurrences {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t total() const { return positive + negative; }
  bool operator==(const Occurrences&) const = default;
};

Occurrences occurrences(const Word& w, Generator g);

// Replaces each letter g^s by images[g]^s and reduces. Throws MalformedInput
// when w uses a generator without an image.
Word substitute(const Word& w, std::span<const Word> images);

// Unbiased draw from [0, bound) using rejection; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Non-backtracking uniform walk: first letter uniform over the 2n signed
// letters, each later letter uniform over the 2n-1 that do not cancel.
Word random_reduced_word(std::size_t rank, std::size_t length,
                         std::mt19937_64& rng);
Word random_reduced_word(std::size_t rank, std::size_t length,
                         std::uint64_t seed);

// Token syntax: whitespace-separated `name^exp`, exp an optional signed
// integer. Errors carry 1-based positions; `line` and `column_offset` shift
// them when the text is a slice of a larger document.
Word parse_word(std::string_view text, std::span<const std::string> names,
                std::size_t line = 1, std::size_t column_offset = 0);

// Inverse of parse_word, with runs of a letter collapsed into one token.
std::string format_word(const Word& w, std::span<const std::string> names);

// True for nonempty [A-Za-z0-9_] identifiers.
bool is_valid_name(std::string_view name);

}  // namespace bpg
