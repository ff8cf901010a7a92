#include "bpg/nielsen.hpp"

#include <limits>
#include <string>
#include <utility>

#include "bpg/errors.hpp"

namespace bpg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_index(Generator g, std::size_t rank) {
  if (g >= rank) {
    throw RankMismatch("move index " + std::to_string(g) + " outside rank " +
                       std::to_string(rank));
  }
}

void check_word(const Word& w, std::size_t rank) {
  if (w.required_rank() > rank) {
    throw RankMismatch("word uses generator " +
                       std::to_string(w.required_rank() - 1) +
                       " outside rank " + std::to_string(rank));
  }
}

}  // namespace

void validate_move(const NielsenMove& m, std::size_t rank) {
  std::visit(overloaded{
                 [&](const Inv& v) { check_index(v.i, rank); },
                 [&](const RightMult& v) {
                   if (v.i == v.j) throw MalformedInput("mul move needs i != j");
                   if (v.e == 0) throw MalformedInput("mul move needs e != 0");
                   check_index(v.i, rank);
                   check_index(v.j, rank);
                 },
                 [&](const Swap& v) {
                   if (v.i == v.j) throw MalformedInput("swap move needs i != j");
                   check_index(v.i, rank);
                   check_index(v.j, rank);
                 },
             },
             m);
}

NielsenMove inverse_move(const NielsenMove& m) {
  if (const auto* r = std::get_if<RightMult>(&m)) {
    return RightMult{r->i, r->j, -r->e};
  }
  return m;
}

std::vector<Word> move_images(const NielsenMove& m, std::size_t rank) {
  validate_move(m, rank);
  std::vector<Word> images;
  images.reserve(rank);
  for (Generator g = 0; g < rank; ++g) images.push_back(Word{pos(g)});
  std::visit(overloaded{
                 [&](const Inv& v) { images[v.i] = Word{neg(v.i)}; },
                 [&](const RightMult& v) {
                   images[v.i] = concat(Word{pos(v.i)}, Word::power(v.j, v.e));
                 },
                 [&](const Swap& v) { std::swap(images[v.i], images[v.j]); },
             },
             m);
  return images;
}

Word apply_move(const NielsenMove& m, const Word& w, std::size_t rank) {
  validate_move(m, rank);
  check_word(w, rank);
  return std::visit(
      overloaded{
          // Inv and Swap map reduced words to reduced words.
          [&](const Inv& v) {
            std::vector<Letter> out(w.begin(), w.end());
            for (Letter& l : out) {
              if (l.gen() == v.i) l = l.inverse();
            }
            return Word(out);
          },
          [&](const Swap& v) {
            std::vector<Letter> out(w.begin(), w.end());
            for (Letter& l : out) {
              if (l.gen() == v.i) {
                l = Letter(v.j, l.sign());
              } else if (l.gen() == v.j) {
                l = Letter(v.i, l.sign());
              }
            }
            return Word(out);
          },
          [&](const RightMult& v) {
            const std::int64_t n = v.e < 0 ? -v.e : v.e;
            const Letter tail(v.j, v.e < 0 ? -1 : 1);
            WordBuilder out(w.length());
            for (Letter l : w) {
              if (l.gen() != v.i) {
                out.push(l);
              } else if (l.sign() > 0) {
                out.push(l);
                for (std::int64_t k = 0; k < n; ++k) out.push(tail);
              } else {
                for (std::int64_t k = 0; k < n; ++k) out.push(tail.inverse());
                out.push(l);
              }
            }
            return std::move(out).build();
          },
      },
      m);
}

Automorphism::Automorphism(std::size_t rank, std::vector<NielsenMove> moves)
    : rank_(rank), moves_(std::move(moves)) {
  for (const auto& m : moves_) validate_move(m, rank_);
}

void Automorphism::push(const NielsenMove& m) {
  validate_move(m, rank_);
  moves_.push_back(m);
}

void Automorphism::append(const Automorphism& later) {
  if (later.rank_ != rank_) {
    throw RankMismatch("cannot compose automorphisms of rank " +
                       std::to_string(rank_) + " and " +
                       std::to_string(later.rank_));
  }
  moves_.insert(moves_.end(), later.moves_.begin(), later.moves_.end());
}

Word apply(const Automorphism& a, const Word& w) {
  check_word(w, a.rank());
  Word out = w;
  for (const auto& m : a.moves()) out = apply_move(m, out, a.rank());
  return out;
}

std::size_t move_length_bound(const NielsenMove& m, const Word& w) {
  const auto* r = std::get_if<RightMult>(&m);
  if (r == nullptr) return w.length();
  const auto e = static_cast<std::size_t>(r->e < 0 ? -r->e : r->e);
  const std::size_t occ = occurrences(w, r->i).total();
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (occ != 0 && e > (kMax - w.length()) / occ) return kMax;
  return w.length() + e * occ;
}

Automorphism inverse(const Automorphism& a) {
  std::vector<NielsenMove> moves;
  moves.reserve(a.moves().size());
  for (auto it = a.moves().rbegin(); it != a.moves().rend(); ++it) {
    moves.push_back(inverse_move(*it));
  }
  return Automorphism(a.rank(), std::move(moves));
}

Matrix<std::int64_t> abelianized_matrix(const Automorphism& a) {
  const std::size_t n = a.rank();
  auto m = Matrix<std::int64_t>::identity(n);
  // Each move left-multiplies by its elementary matrix, i.e. a row operation.
  for (const auto& move : a.moves()) {
    std::visit(overloaded{
                   [&](const Inv& v) {
                     for (std::size_t c = 0; c < n; ++c) m(v.i, c) = -m(v.i, c);
                   },
                   [&](const RightMult& v) {
                     for (std::size_t c = 0; c < n; ++c)
                       m(v.j, c) += v.e * m(v.i, c);
                   },
                   [&](const Swap& v) {
                     for (std::size_t c = 0; c < n; ++c)
                       std::swap(m(v.i, c), m(v.j, c));
                   },
               },
               move);
  }
  return m;
}

Automorphism expand_swaps(const Automorphism& a) {
  Automorphism out(a.rank());
  for (const auto& move : a.moves()) {
    const auto* s = std::get_if<Swap>(&move);
    if (s == nullptr) {
      out.push(move);
      continue;
    }
    const Generator i = s->i;
    const Generator j = s->j;
    for (const NielsenMove& m :
         {NielsenMove{Inv{j}}, NielsenMove{Inv{i}}, NielsenMove{RightMult{i, j, -1}},
          NielsenMove{Inv{i}}, NielsenMove{RightMult{j, i, -1}},
          NielsenMove{RightMult{i, j, 1}}}) {
      out.push(m);
    }
  }
  return out;
}

}  // namespace bpg
