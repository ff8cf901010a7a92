#pragma once

// Bounded refutation of largeness: enumerate subgroups of index <= N up to
// conjugacy and check that none has an abelianization of torsion-free rank
// >= 2. A surjection onto F_2 would force rank >= 2, so such a result rules
// one out; rank >= 2 on its own proves nothing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bpg/bigint.hpp"
#include "bpg/cover.hpp"
#include "bpg/matrix.hpp"
#include "bpg/presentation.hpp"

namespace bpg {

struct SmithForm {
  // min(rows, cols) entries; nonzero entries come first and divide each other.
  std::vector<BigInt> diagonal;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(Matrix<BigInt> m);
SmithForm smith_normal_form(const Matrix<std::int64_t>& m);

struct Abelianization {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, ascending
};

// Z^columns modulo the row lattice of `relations`.
Abelianization abelianization(const Matrix<std::int64_t>& relations);
Abelianization abelianization(const Presentation& p);
Abelianization abelianization(const SubgroupPresentation& sub);

struct LowIndexOptions {
  // One table per conjugacy class; false lists every subgroup.
  bool up_to_conjugacy = true;
  unsigned jobs = 1;
};

// Complete, transitive, relator-closed coset tables for the subgroups of
// index <= max_index, in standard numbering, sorted by (index, entries).
std::vector<CosetTable> low_index_subgroups(const Presentation& p,
                                            std::size_t max_index,
                                            const LowIndexOptions& options = {});

// Relabels a complete transitive table so that `basepoint` becomes coset 0 and
// the other cosets are numbered in order of first appearance in the row-major
// scan. Basepoint b gives the table of the conjugate subgroup Stab(b).
CosetTable standardize(const CosetTable& table, Coset basepoint);

// Distinct standardized tables over all basepoints, sorted: the conjugacy
// class of the subgroup.
std::vector<CosetTable> conjugate_tables(const CosetTable& table);

struct RefutationRecord {
  std::size_t index = 0;
  CosetTable table;
  Abelianization abelian;
};

enum class Verdict { Refuted, Inconclusive };

struct Refutation {
  Presentation presentation;
  std::size_t max_index = 0;
  std::vector<RefutationRecord> records;
  Verdict verdict = Verdict::Inconclusive;

  // Records whose torsion-free rank is at least 2.
  std::vector<std::size_t> witnesses() const;
};

Refutation refute_largeness_at_index(const Presentation& p, std::size_t max_index,
                                     unsigned jobs = 1);

}  // namespace bpg
