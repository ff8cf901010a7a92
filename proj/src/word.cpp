#include "bpg/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "bpg/errors.hpp"

namespace bpg {

namespace {

// Keeps `a^1000000000` from exhausting memory.
constexpr std::int64_t kMaxTokenExponent = 10'000'000;

}  // namespace

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word::Word(std::span<const Letter> letters) {
  WordBuilder b(letters.size());
  for (Letter l : letters) b.push(l);
  *this = std::move(b).build();
}

Word Word::power(Generator g, std::int64_t e) {
  std::vector<Letter> letters(static_cast<std::size_t>(e < 0 ? -e : e),
                              Letter(g, e < 0 ? -1 : 1));
  return Word(Reduced{}, std::move(letters));
}

std::size_t Word::required_rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) r = std::max<std::size_t>(r, l.gen() + 1);
  return r;
}

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word concat(const Word& a, const Word& b) {
  WordBuilder out(a.length() + b.length());
  out.append(a);
  out.append(b);
  return std::move(out).build();
}

Word invert(const Word& w) {
  WordBuilder out(w.length());
  out.append_inverse(w);
  return std::move(out).build();
}

Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.length();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(w.letters().subspan(lo, hi - lo));
}

Word power(const Word& w, std::int64_t e) {
  WordBuilder out;
  const std::int64_t n = e < 0 ? -e : e;
  for (std::int64_t i = 0; i < n; ++i) {
    if (e > 0) {
      out.append(w);
    } else {
      out.append_inverse(w);
    }
  }
  return std::move(out).build();
}

std::vector<std::int64_t> exponent_vector(const Word& w, std::size_t rank) {
  std::vector<std::int64_t> x(rank, 0);
  for (Letter l : w) {
    if (l.gen() >= rank) {
      throw MalformedInput("generator index " + std::to_string(l.gen()) +
                           " outside rank " + std::to_string(rank));
    }
    x[l.gen()] += l.sign();
  }
  return x;
}

Occurrences occurrences(const Word& w, Generator g) {
  Occurrences o;
  for (Letter l : w) {
    if (l.gen() != g) continue;
    if (l.sign() > 0) {
      ++o.positive;
    } else {
      ++o.negative;
    }
  }
  return o;
}

Word substitute(const Word& w, std::span<const Word> images) {
  WordBuilder out(w.length());
  for (Letter l : w) {
    if (l.gen() >= images.size()) {
      throw MalformedInput("no image for generator " + std::to_string(l.gen()));
    }
    if (l.sign() > 0) {
      out.append(images[l.gen()]);
    } else {
      out.append_inverse(images[l.gen()]);
    }
  }
  return std::move(out).build();
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

Word random_reduced_word(std::size_t rank, std::size_t length,
                         std::mt19937_64& rng) {
  if (rank == 0 && length > 0) {
    throw MalformedInput("random word of positive length needs rank >= 1");
  }
  std::vector<Letter> letters;
  letters.reserve(length);
  const auto alphabet = static_cast<std::uint32_t>(2 * rank);
  for (std::size_t i = 0; i < length; ++i) {
    if (letters.empty()) {
      letters.push_back(Letter::from_code(
          static_cast<std::uint32_t>(uniform_below(rng, alphabet))));
      continue;
    }
    // Draw from the 2n-1 codes other than the inverse of the last letter.
    const std::uint32_t forbidden = letters.back().inverse().code();
    auto code = static_cast<std::uint32_t>(uniform_below(rng, alphabet - 1));
    if (code >= forbidden) ++code;
    letters.push_back(Letter::from_code(code));
  }
  return Word(letters);
}

Word random_reduced_word(std::size_t rank, std::size_t length,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_reduced_word(rank, length, rng);
}

bool is_valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Word parse_word(std::string_view text, std::span<const std::string> names,
                std::size_t line, std::size_t column_offset) {
  WordBuilder out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    const std::string_view token = text.substr(start, i - start);
    const std::size_t col = column_offset + start + 1;

    const auto caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    if (!is_valid_name(name)) {
      throw ParseError(line, col, "malformed token '" + std::string(token) + "'");
    }
    const auto found = std::find(names.begin(), names.end(), name);
    if (found == names.end()) {
      throw ParseError(line, col, "unknown generator '" + std::string(name) + "'");
    }
    std::int64_t exp = 1;
    if (caret != std::string_view::npos) {
      std::string_view digits = token.substr(caret + 1);
      // from_chars rejects a leading '+'.
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), exp);
      if (digits.empty() || ec != std::errc{} ||
          ptr != digits.data() + digits.size()) {
        throw ParseError(line, col + caret + 1,
                         "malformed exponent in '" + std::string(token) + "'");
      }
      if (exp > kMaxTokenExponent || exp < -kMaxTokenExponent) {
        throw ParseError(line, col + caret + 1,
                         "exponent out of range in '" + std::string(token) + "'");
      }
    }
    const auto g = static_cast<Generator>(found - names.begin());
    const Letter l(g, exp < 0 ? -1 : 1);
    for (std::int64_t k = 0; k < std::abs(exp); ++k) out.push(l);
  }
  return std::move(out).build();
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  std::string out;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w[j] == w[i]) ++j;
    const auto run = static_cast<std::int64_t>(j - i);
    const Generator g = w[i].gen();
    if (!out.empty()) out += ' ';
    out += g < names.size() ? names[g] : "?" + std::to_string(g);
    const std::int64_t exp = run * w[i].sign();
    if (exp != 1) {
      out += '^';
      out += std::to_string(exp);
    }
    i = j;
  }
  return out;
}

}  // namespace bpg
