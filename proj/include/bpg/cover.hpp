#pragma once

// Coset tables, Reidemeister-Schreier rewriting, and the cyclic cover given by
// G -> Z/k, t -> 1, every other generator -> 0.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpg/goodpres.hpp"
#include "bpg/presentation.hpp"
#include "bpg/word.hpp"

namespace bpg {

using Coset = std::uint32_t;
inline constexpr Coset kUndefinedCoset = std::numeric_limits<Coset>::max();

// Action of the signed generators on cosets; column = Letter::code(). Coset 0
// is the subgroup itself.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t cosets, std::size_t rank)
      : cosets_(cosets), rank_(rank), data_(cosets * 2 * rank, kUndefinedCoset) {}

  std::size_t size() const { return cosets_; }
  std::size_t rank() const { return rank_; }
  std::size_t columns() const { return 2 * rank_; }

  Coset operator()(Coset c, Letter l) const { return data_[c * columns() + l.code()]; }
  Coset at(Coset c, std::size_t column) const { return data_[c * columns() + column]; }
  bool defined(Coset c, Letter l) const { return (*this)(c, l) != kUndefinedCoset; }

  // Sets c.l = d and d.l^-1 = c.
  void set(Coset c, Letter l, Coset d) {
    data_[c * columns() + l.code()] = d;
    data_[d * columns() + l.inverse().code()] = c;
  }
  void clear(Coset c, Letter l) {
    const Coset d = (*this)(c, l);
    data_[c * columns() + l.code()] = kUndefinedCoset;
    if (d != kUndefinedCoset) data_[d * columns() + l.inverse().code()] = kUndefinedCoset;
  }
  Coset add_coset() {
    data_.resize(data_.size() + columns(), kUndefinedCoset);
    return static_cast<Coset>(cosets_++);
  }

  bool complete() const;
  // Coset reached from c by reading w, or nullopt on an undefined entry.
  std::optional<Coset> trace(Coset c, const Word& w) const;
  // Every relator closes at every coset.
  bool closes(std::span<const Word> relators) const;
  // Every coset is reachable from coset 0.
  bool transitive() const;

  // Row-major flat entries, one row per coset.
  std::span<const Coset> data() const { return data_; }

  bool operator==(const CosetTable&) const = default;
  auto operator<=>(const CosetTable&) const = default;

 private:
  std::size_t cosets_ = 0;
  std::size_t rank_ = 0;
  std::vector<Coset> data_;
};

// Table of G -> Z/k with t -> 1. Throws NotGoodPresentation when some relator
// does not close, i.e. has t-exponent not divisible by k.
CosetTable zk_coset_table(const Presentation& p, Generator t, std::size_t k);
CosetTable zk_coset_table(const GoodPresentation& g, std::size_t k);

// The Schreier generator for (coset, gen) is rep(coset) gen rep(coset.gen)^-1.
struct SchreierLabel {
  Coset coset = 0;
  Generator gen = 0;
  bool operator==(const SchreierLabel&) const = default;
};

struct SubgroupPresentation {
  std::vector<std::string> names;
  std::vector<SchreierLabel> labels;
  // Words over the labels, ordered by (relator, coset).
  std::vector<Word> relators;
  // Image of each label in the base group's generators.
  std::vector<Word> inclusion;
  // Schreier transversal, one representative per coset.
  std::vector<Word> transversal;
  std::size_t index = 0;
  std::size_t base_rank = 0;

  std::size_t rank() const { return labels.size(); }
  std::int64_t deficiency() const {
    return static_cast<std::int64_t>(labels.size()) -
           static_cast<std::int64_t>(relators.size());
  }
};

// Generic rewriting over any complete, relator-compatible table. The
// transversal comes from breadth-first search over positive generator edges in
// `generator_order` (default 0..n-1); labels are ordered by (position of gen
// in that order, coset) and named `<generator>_<coset>`. Throws
// IncompleteTable.
SubgroupPresentation reidemeister_schreier(const Presentation& p,
                                           const CosetTable& table,
                                           std::span<const Generator> generator_order = {});

// Kernel of G -> Z/k on a good presentation. Transversal t^0..t^{k-1}; labels
// `tau` = t^k and `y_<i>_<j>` = t^j x_i t^-j.
SubgroupPresentation cyclic_cover(const GoodPresentation& g, std::size_t k);

// Inclusion words lie in the kernel, counts are (n-1)k+1 and mk, and the
// deficiency is (n-1-m)k+1 (at least k+1 for BP input).
bool verify_subgroup(const SubgroupPresentation& sub, const GoodPresentation& g,
                     std::size_t k);

// Presentation-format text with the subgroup's label names.
std::string serialize(const SubgroupPresentation& sub);

}  // namespace bpg
