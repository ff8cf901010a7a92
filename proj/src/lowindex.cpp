#include "bpg/lowindex.hpp"

#include <algorithm>
#include <thread>
#include <utility>

#include "bpg/errors.hpp"

namespace bpg {

SmithForm smith_normal_form(Matrix<BigInt> a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t diag = std::min(rows, cols);

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r1, j), a(r2, j));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, c1), a(i, c2));
  };

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool any = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          BigInt v = abs(a(i, j));
          if (!any || v < best) {
            any = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (!any) break;
      swap_rows(t, pi);
      swap_cols(t, pj);

      const BigInt p = a(t, t);
      bool residue = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = a(i, t) / p;
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        residue = residue || a(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = a(t, j) / p;
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        residue = residue || a(t, j) != 0;
      }
      if (residue) continue;

      // Pivot must divide the rest; otherwise fold the offending row in and
      // reduce again with a smaller remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % p != 0) {
            for (std::size_t c = t; c < cols; ++c) a(t, c) += a(i, c);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }

  SmithForm s;
  s.diagonal.reserve(diag);
  for (std::size_t t = 0; t < diag; ++t) {
    s.diagonal.push_back(abs(a(t, t)));
    if (a(t, t) != 0) ++s.rank;
  }
  return s;
}

SmithForm smith_normal_form(const Matrix<std::int64_t>& m) {
  return smith_normal_form(matrix_cast<BigInt>(m));
}

Abelianization abelianization(const Matrix<std::int64_t>& relations) {
  const auto snf = smith_normal_form(relations);
  Abelianization ab;
  ab.free_rank = relations.cols() - snf.rank;
  for (const auto& d : snf.diagonal) {
    if (d > 1) ab.torsion.push_back(d);
  }
  return ab;
}

Abelianization abelianization(const Presentation& p) {
  return abelianization(exponent_matrix(p));
}

Abelianization abelianization(const SubgroupPresentation& sub) {
  return abelianization(exponent_matrix(sub.relators, sub.rank()));
}

CosetTable standardize(const CosetTable& table, Coset basepoint) {
  const std::size_t k = table.size();
  std::vector<Coset> to_new(k, kUndefinedCoset);
  std::vector<Coset> to_old;
  to_old.reserve(k);
  to_new[basepoint] = 0;
  to_old.push_back(basepoint);
  CosetTable out(k, table.rank());
  for (std::size_t i = 0; i < to_old.size(); ++i) {
    for (std::size_t col = 0; col < table.columns(); ++col) {
      const Coset e = table.at(to_old[i], col);
      if (e == kUndefinedCoset) throw IncompleteTable("cannot standardize a partial table");
      if (to_new[e] == kUndefinedCoset) {
        to_new[e] = static_cast<Coset>(to_old.size());
        to_old.push_back(e);
      }
      out.set(static_cast<Coset>(i), Letter::from_code(static_cast<std::uint32_t>(col)),
              to_new[e]);
    }
  }
  if (to_old.size() != k) throw MalformedInput("cannot standardize an intransitive table");
  return out;
}

std::vector<CosetTable> conjugate_tables(const CosetTable& table) {
  std::vector<CosetTable> out;
  for (Coset b = 0; b < table.size(); ++b) out.push_back(standardize(table, b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Backtracking over partial coset tables with `count` live cosets out of a
// capacity of max_index rows. Undefined entries are filled in row-major scan
// order, so cosets are always numbered in standard order.
class LowIndexSearch {
 public:
  LowIndexSearch(const Presentation& p, std::size_t max_index, bool up_to_conjugacy)
      : relators_(p.relators()),
        max_index_(max_index),
        up_to_conjugacy_(up_to_conjugacy),
        rank_(p.rank()) {}

  struct State {
    CosetTable table;
    std::size_t count = 1;
  };

  State root() const {
    State s{CosetTable(max_index_, rank_), 1};
    return s;
  }

  // Children of a state that is not yet complete, already deduced and
  // canonicity-checked.
  std::vector<State> children(const State& s) const {
    std::vector<State> out;
    const auto [c, col] = first_gap(s);
    const Letter l = Letter::from_code(static_cast<std::uint32_t>(col));
    const std::size_t limit = std::min(s.count + 1, max_index_);
    for (Coset d = 0; d < limit; ++d) {
      const bool fresh = d == s.count;
      if (!fresh && s.table.defined(d, l.inverse())) continue;
      State child = s;
      if (fresh) ++child.count;
      child.table.set(c, l, d);
      if (!deduce(child)) continue;
      if (up_to_conjugacy_ && !maybe_canonical(child)) continue;
      out.push_back(std::move(child));
    }
    return out;
  }

  bool deduce_root(State& s) const {
    return deduce(s) && (!up_to_conjugacy_ || maybe_canonical(s));
  }

  bool is_complete(const State& s) const {
    return first_gap(s).first == kUndefinedCoset;
  }

  CosetTable finish(const State& s) const {
    CosetTable t(s.count, rank_);
    for (Coset c = 0; c < s.count; ++c) {
      for (std::size_t col = 0; col < t.columns(); ++col) {
        t.set(c, Letter::from_code(static_cast<std::uint32_t>(col)), s.table.at(c, col));
      }
    }
    return t;
  }

  void run(const State& s, std::vector<CosetTable>& out) const {
    if (is_complete(s)) {
      out.push_back(finish(s));
      return;
    }
    for (const auto& child : children(s)) run(child, out);
  }

 private:
  std::pair<Coset, std::size_t> first_gap(const State& s) const {
    for (Coset c = 0; c < s.count; ++c) {
      for (std::size_t col = 0; col < 2 * rank_; ++col) {
        if (s.table.at(c, col) == kUndefinedCoset) return {c, col};
      }
    }
    return {kUndefinedCoset, 0};
  }

  // Scans every relator from every live coset, filling entries forced by a
  // single gap. Returns false on a contradiction.
  bool deduce(State& s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Coset c = 0; c < s.count; ++c) {
        for (const auto& r : relators_) {
          const std::size_t len = r.length();
          std::size_t i = 0;
          Coset f = c;
          while (i < len && s.table.defined(f, r[i])) f = s.table(f, r[i++]);
          if (i == len) {
            if (f != c) return false;
            continue;
          }
          std::size_t j = len;
          Coset b = c;
          while (j > i && s.table.defined(b, r[j - 1].inverse())) {
            b = s.table(b, r[j - 1].inverse());
            --j;
          }
          if (j == i) {
            if (f != b) return false;
          } else if (j == i + 1) {
            if (s.table.defined(b, r[i].inverse())) return false;
            s.table.set(f, r[i], b);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  // False when some other basepoint already yields a smaller standard table
  // on the determined prefix, so no completion can be the class minimum.
  bool maybe_canonical(const State& s) const {
    const std::size_t cols = 2 * rank_;
    std::vector<Coset> to_new(s.count);
    std::vector<Coset> to_old;
    for (Coset b = 1; b < s.count; ++b) {
      std::fill(to_new.begin(), to_new.end(), kUndefinedCoset);
      to_old.assign(1, b);
      to_new[b] = 0;
      bool decided = false;
      for (std::size_t i = 0; i < to_old.size() && !decided; ++i) {
        for (std::size_t col = 0; col < cols; ++col) {
          const Coset e = s.table.at(to_old[i], col);
          const Coset cur = s.table.at(static_cast<Coset>(i), col);
          if (e == kUndefinedCoset || cur == kUndefinedCoset) {
            decided = true;
            break;
          }
          if (to_new[e] == kUndefinedCoset) {
            to_new[e] = static_cast<Coset>(to_old.size());
            to_old.push_back(e);
          }
          if (to_new[e] < cur) return false;
          if (to_new[e] > cur) {
            decided = true;
            break;
          }
        }
      }
    }
    return true;
  }

  std::span<const Word> relators_;
  std::size_t max_index_;
  bool up_to_conjugacy_;
  std::size_t rank_;
};

}  // namespace

std::vector<CosetTable> low_index_subgroups(const Presentation& p,
                                            std::size_t max_index,
                                            const LowIndexOptions& options) {
  if (max_index == 0) throw MalformedInput("index bound must be positive");
  LowIndexSearch search(p, max_index, options.up_to_conjugacy);
  auto root = search.root();
  std::vector<CosetTable> out;
  if (!search.deduce_root(root)) return out;

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || search.is_complete(root)) {
    search.run(root, out);
  } else {
    // Disjoint subtrees below the first decision, one result list each.
    const auto subtrees = search.children(root);
    std::vector<std::vector<CosetTable>> parts(subtrees.size());
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t t = w; t < subtrees.size(); t += jobs) {
            search.run(subtrees[t], parts[t]);
          }
        });
      }
    }
    for (auto& part : parts) {
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> Refutation::witnesses() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].abelian.free_rank >= 2) out.push_back(i);
  }
  return out;
}

Refutation refute_largeness_at_index(const Presentation& p, std::size_t max_index,
                                     unsigned jobs) {
  Refutation r;
  r.presentation = p;
  r.max_index = max_index;
  for (auto& table : low_index_subgroups(p, max_index, {true, jobs})) {
    const auto sub = reidemeister_schreier(p, table);
    r.records.push_back({table.size(), std::move(table), abelianization(sub)});
  }
  r.verdict = r.witnesses().empty() ? Verdict::Refuted : Verdict::Inconclusive;
  return r;
}

}  // namespace bpg
