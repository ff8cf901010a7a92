#pragma once

// Certified surjections of a finite-index subgroup onto the free group F(u, v).

#include <cstddef>
#include <optional>
#include <vector>

#include "bpg/cover.hpp"
#include "bpg/goodpres.hpp"
#include "bpg/lowindex.hpp"
#include "bpg/presentation.hpp"

namespace bpg {

// Target generators of F_2.
inline constexpr Generator kTargetU = 0;
inline constexpr Generator kTargetV = 1;

// One word over {u, v} per subgroup label.
using Assignment = std::vector<Word>;

// True iff every relator maps to the empty word (a homomorphism) and both u
// and v occur as assigned values (it is onto). Throws UnassignedLabel when the
// assignment does not cover every label.
bool verify_certificate(const SubgroupPresentation& sub, const Assignment& a);

struct SearchStats {
  std::size_t nodes = 0;
  // 1 = kill all but two, 2 = grid patterns, 3 = backtracking; 0 if not found.
  int phase = 0;
};

struct SearchResult {
  std::optional<Assignment> assignment;
  SearchStats stats;
};

// Bounded search over assignments with values in {empty, u, v}. Each
// candidate or backtracking node costs one unit of `budget`. A miss says
// nothing about whether a surjection exists.
SearchResult search_certificate(const SubgroupPresentation& sub, std::size_t budget);

struct LargenessCertificate {
  Presentation original;
  Automorphism automorphism{0};
  Generator t_index = 0;
  std::size_t k = 0;
  SubgroupPresentation subgroup;
  Assignment assignment;
};

struct KStats {
  std::size_t k = 0;
  SearchStats search;
  bool found = false;
};

struct CertifyResult {
  std::optional<LargenessCertificate> certificate;
  std::vector<KStats> per_k;
  std::size_t k_max = 0;
  // Torsion-free rank of the certified subgroup's abelianization.
  std::size_t abelian_rank = 0;
};

// make_good, then covers for k = 1..k_max (default: longest relator of the
// good presentation + 1) until a search succeeds. The smallest successful k
// wins regardless of `jobs`. Throws NotBP, and LengthLimitExceeded when
// make_good outgrows a nonzero `max_length`.
CertifyResult certify_large(const Presentation& p,
                            std::optional<std::size_t> k_max = std::nullopt,
                            std::size_t budget = 200000, unsigned jobs = 1,
                            std::size_t max_length = 0);

// Full audit from the original presentation: replays the automorphism, checks
// the result is good at t_index, rebuilds the cover and compares it with the
// stored subgroup, then verifies the assignment.
bool replay_certificate(const LargenessCertificate& cert);

}  // namespace bpg
