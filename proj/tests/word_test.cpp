#include <doctest.h>

#include <random>
#include <vector>

#include "bpg/errors.hpp"
#include "bpg/word.hpp"

using namespace bpg;

namespace {

constexpr Generator x = 0, y = 1, z = 2;

// Oracle: repeatedly delete the first cancelling pair until none is left.
std::vector<Letter> naive_reduce(std::vector<Letter> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1].inverse()) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i),
                s.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::vector<Letter> random_letters(std::mt19937_64& rng, std::size_t rank, std::size_t n) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Letter::from_code(static_cast<std::uint32_t>(uniform_below(rng, 2 * rank))));
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.length(); ++i) {
    if (w[i] == w[i + 1].inverse()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reduce") {
  CHECK(reduce({}).length() == 0);
  CHECK(Word{pos(x), neg(x)}.empty());
  const Word w{pos(x), neg(y), pos(y), pos(x), pos(y)};
  CHECK(w == Word{pos(x), pos(x), pos(y)});
  CHECK(w.length() == 3);
}

TEST_CASE("reduce agrees with the naive oracle and is idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto letters = random_letters(rng, 2, uniform_below(rng, 40));
    const Word w(letters);
    const auto expected = naive_reduce(letters);
    CHECK(std::vector<Letter>(w.begin(), w.end()) == expected);
    CHECK(Word(w.letters()) == w);
  }
}

TEST_CASE("concat, invert, cyclic_reduce") {
  CHECK(invert(Word{pos(x), pos(y)}) == Word{neg(y), neg(x)});
  CHECK(concat(Word{pos(x), pos(y)}, Word{neg(y), pos(z)}) == Word{pos(x), pos(z)});
  CHECK(cyclic_reduce(Word{neg(x), pos(y), pos(x)}) == Word{pos(y)});
  CHECK(cyclic_reduce(Word{neg(x), pos(y), pos(y), pos(x)}) == Word{pos(y), pos(y)});
  CHECK(cyclic_reduce(Word{pos(x), pos(y)}) == Word{pos(x), pos(y)});
  CHECK(cyclic_reduce(Word{}).empty());
}

TEST_CASE("group laws on random words") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Word a = random_reduced_word(3, uniform_below(rng, 30), rng);
    const Word b = random_reduced_word(3, uniform_below(rng, 30), rng);
    CHECK(invert(invert(a)) == a);
    CHECK(concat(a, invert(a)).empty());
    const auto xa = exponent_vector(a, 3);
    const auto xb = exponent_vector(b, 3);
    const auto xab = exponent_vector(concat(a, b), 3);
    for (int i = 0; i < 3; ++i) CHECK(xab[i] == xa[i] + xb[i]);
    std::int64_t abs_sum = 0;
    std::size_t occ = 0;
    for (Generator g = 0; g < 3; ++g) {
      abs_sum += std::abs(xa[g]);
      occ += occurrences(a, g).total();
    }
    CHECK(abs_sum <= static_cast<std::int64_t>(a.length()));
    CHECK(occ == a.length());
  }
}

TEST_CASE("exponent_vector") {
  CHECK(exponent_vector(Word{pos(x), pos(y), pos(x), pos(y), pos(y)}, 2) ==
        std::vector<std::int64_t>{2, 3});
  CHECK(exponent_vector(Word{pos(x), pos(y), neg(x), neg(y)}, 2) ==
        std::vector<std::int64_t>{0, 0});
  const Word w = concat(concat(Word::power(x, 3), Word::power(y, -2)), Word{pos(z)});
  CHECK(exponent_vector(w, 3) == std::vector<std::int64_t>{3, -2, 1});
  CHECK_THROWS_AS(exponent_vector(w, 2), MalformedInput);
}

TEST_CASE("occurrences") {
  CHECK(occurrences(Word{pos(x), pos(y), neg(x), neg(y)}, x) == Occurrences{1, 1});
  CHECK(occurrences(Word{}, x) == Occurrences{0, 0});
  CHECK(occurrences(Word{pos(x), pos(y), pos(x), pos(y), pos(y)}, y) == Occurrences{3, 0});
}

TEST_CASE("substitute") {
  const Word w{pos(x), pos(y), pos(x), pos(y), pos(y)};
  const std::vector<Word> id{Word{pos(x)}, Word{pos(y)}};
  CHECK(substitute(w, id) == w);

  // Oracle: expand letter by letter without reduction, then reduce naively.
  const std::vector<Word> images{Word{pos(x), neg(y)}, Word{pos(y)}};
  std::vector<Letter> expanded;
  for (Letter l : w) {
    for (Letter m : images[l.gen()]) expanded.push_back(m);
  }
  const auto expected = naive_reduce(expanded);
  const Word got = substitute(w, images);
  CHECK(std::vector<Letter>(got.begin(), got.end()) == expected);
  CHECK(got == Word{pos(x), pos(x), pos(y)});

  const std::vector<Word> cube{concat(Word{pos(x)}, Word::power(y, -3)), Word{pos(y)}};
  CHECK(substitute(Word{pos(x)}, cube).length() == 4);

  CHECK_THROWS_AS(substitute(w, std::vector<Word>{Word{pos(x)}}), MalformedInput);
}

TEST_CASE("substitute is a homomorphism") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> images;
    for (int g = 0; g < 3; ++g) images.push_back(random_reduced_word(3, uniform_below(rng, 5), rng));
    const Word a = random_reduced_word(3, uniform_below(rng, 20), rng);
    const Word b = random_reduced_word(3, uniform_below(rng, 20), rng);
    CHECK(substitute(concat(a, b), images) ==
          concat(substitute(a, images), substitute(b, images)));
  }
}

TEST_CASE("random_reduced_word") {
  CHECK(random_reduced_word(2, 0, 1u).empty());
  for (std::size_t len : {1u, 2u, 17u, 300u}) {
    const Word w = random_reduced_word(3, len, 99u);
    CHECK(w.length() == len);
    CHECK(is_reduced(w));
  }
  CHECK(random_reduced_word(4, 100, 123u) == random_reduced_word(4, 100, 123u));
  CHECK(random_reduced_word(4, 100, 123u) != random_reduced_word(4, 100, 124u));
}

TEST_CASE("random_reduced_word is roughly uniform on the next letter") {
  // In rank 2 the letter after x is uniform over the three that do not cancel it.
  std::mt19937_64 rng(3);
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 30000; ++i) {
    const Word w = random_reduced_word(2, 2, rng);
    if (w[0] == pos(x)) ++counts[w[1].code()];
  }
  CHECK(counts[neg(x).code()] == 0);
  const int total = counts[0] + counts[2] + counts[3];
  for (auto code : {pos(x).code(), pos(y).code(), neg(y).code()}) {
    CHECK(std::abs(counts[code] * 3.0 / total - 1.0) < 0.1);
  }
}

TEST_CASE("parse_word and format_word") {
  const std::vector<std::string> names{"a", "b", "c"};
  const Word w = parse_word("a b^-1 c^2", names);
  CHECK(w == Word{pos(0), neg(1), pos(2), pos(2)});
  CHECK(format_word(w, names) == "a b^-1 c^2");
  CHECK(parse_word("a a^-1", names).empty());
  CHECK(parse_word("a^+3", names) == Word::power(0, 3));
  CHECK(parse_word("", names).empty());

  try {
    parse_word("a d", names, 4, 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 13);
  }
  CHECK_THROWS_AS(parse_word("a^x", names), ParseError);
  CHECK_THROWS_AS(parse_word("a^", names), ParseError);
  CHECK_THROWS_AS(parse_word("a^1.5", names), ParseError);
  CHECK_THROWS_AS(parse_word("a^99999999999", names), ParseError);
  CHECK_THROWS_AS(parse_word("a-b", names), ParseError);
}
