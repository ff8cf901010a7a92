#pragma once

// Driving exponent sums to zero with Nielsen moves that run the Euclidean
// algorithm, recording how word length grows at every step.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bpg/bigint.hpp"
#include "bpg/nielsen.hpp"
#include "bpg/word.hpp"

namespace bpg {

// One Euclid step x_s -> x_s x_z^-c. Invariant: length_after <= (c + 1) *
// length_before.
struct GrowthStep {
  RightMult move;
  std::uint64_t c = 0;
  std::size_t length_before = 0;
  std::size_t length_after = 0;
  // Exponent sums of the pair being reduced, in call order, after the step.
  std::int64_t x_after = 0;
  std::int64_t y_after = 0;
};

struct GrowthTrace {
  std::size_t initial_length = 0;
  std::vector<GrowthStep> steps;
  BigInt product_p = 1;  // prod (c_i + 1)
  std::size_t final_length = 0;

  static GrowthTrace start(std::size_t length) {
    GrowthTrace t;
    t.initial_length = length;
    t.final_length = length;
    return t;
  }

  void record(const GrowthStep& step);
  // Concatenates a trace that starts where this one ends.
  void append(const GrowthTrace& later);

  bool step_bounds_hold() const;
  // final_length <= product_p * initial_length
  bool product_bound_holds() const;
};

struct EuclidResult {
  Automorphism automorphism;
  Word word;
  GrowthTrace trace;
};

// Leaves at most one of X_i, X_j nonzero; the survivor is +-gcd. Returns the
// identity when either sum is already zero. Throws InvalidPair for i == j and
// RankMismatch for indices outside `rank`. A nonzero `max_length` makes any
// step that could produce a longer word throw LengthLimitExceeded.
EuclidResult zero_pair(const Word& w, std::size_t rank, Generator i,
                       Generator j, std::size_t max_length = 0);

// Runs zero_pair along consecutive pairs of `chain`, swapping so that the
// running gcd always sits in the later slot. Afterwards X_g(w) = 0 for every g
// in the chain except possibly the last. Generators outside the chain are
// never moved.
EuclidResult zero_chain(const Word& w, std::size_t rank,
                        std::span<const Generator> chain,
                        std::size_t max_length = 0);

// zero_chain over a full permutation of 0..n-1, with n = order.size() >= 2.
EuclidResult zero_all_but_one(const Word& w, std::span<const Generator> order);

struct GrowthRow {
  std::size_t length = 0;
  std::size_t final_length = 0;
  std::size_t steps = 0;
  BigInt product_p = 1;
  std::uint64_t seed = 0;
  std::size_t sample = 0;
  GrowthTrace trace;  // filled only when requested
};

struct GrowthConfig {
  std::size_t rank = 2;
  std::vector<std::size_t> lengths;
  std::size_t samples_per_length = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool keep_traces = false;
};

// Word for (length, sample) of a growth study seeded with `seed`; independent
// of scheduling.
Word growth_sample_word(std::size_t rank, std::size_t length,
                        std::uint64_t seed, std::size_t sample);

// Rows come out ordered by (length position, sample); zero lengths are
// skipped.
std::vector<GrowthRow> growth_experiment(const GrowthConfig& config);

// Header `length,final_length,steps,productP,seed,sample`.
std::string growth_csv(std::span<const GrowthRow> rows);

struct GrowthFit {
  // Least-squares slope of steps against log2(length) and the smallest
  // intercept making steps <= c * log2(length) + d hold on every row.
  double c = 0;
  double d = 0;
  // Least-squares slope of log max final_length against log length.
  double envelope_slope = 0;
  std::size_t rows = 0;
};

GrowthFit fit_growth(std::span<const GrowthRow> rows);

}  // namespace bpg
