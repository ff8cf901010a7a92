#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bpg/freequot.hpp"
#include "bpg/lowindex.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bpg;
using namespace bpg::testing;

namespace {

Presentation free_group(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t g = 0; g < rank; ++g) names.push_back("x" + std::to_string(g));
  return Presentation(names, {});
}

std::map<std::size_t, std::size_t> count_by_index(const std::vector<CosetTable>& tables) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& t : tables) ++out[t.size()];
  return out;
}

// Determinant by cofactor expansion; fine for the tiny minors used here.
BigInt det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    const BigInt term = m[0][c] * det(minor);
    out += (c % 2 == 0) ? term : BigInt(-term);
  }
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Determinantal divisor D_k: gcd of all k x k minors.
BigInt determinantal_divisor(const Matrix<std::int64_t>& m, std::size_t k) {
  BigInt g = 0;
  for (const auto& rows : subsets(m.rows(), k)) {
    for (const auto& cols : subsets(m.cols(), k)) {
      std::vector<std::vector<BigInt>> sub;
      for (auto r : rows) {
        std::vector<BigInt> row;
        for (auto c : cols) row.push_back(m(r, c));
        sub.push_back(row);
      }
      g = gcd(g, abs(det(sub)));
    }
  }
  return g;
}

Matrix<std::int64_t> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  Matrix<std::int64_t> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<std::int64_t>(uniform_below(rng, 2 * bound + 1)) - bound;
  return m;
}

Matrix<std::int64_t> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  auto u = Matrix<std::int64_t>::identity(n);
  for (int step = 0; step < 6; ++step) {
    const auto i = uniform_below(rng, n);
    auto j = uniform_below(rng, n - 1);
    if (j >= i) ++j;
    const auto e = static_cast<std::int64_t>(uniform_below(rng, 5)) - 2;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += e * u(j, c);
  }
  return u;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  Matrix<std::int64_t> m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 3;
  const auto s = smith_normal_form(m);
  CHECK(s.diagonal == std::vector<BigInt>{1, 6});
  CHECK(s.rank == 2);

  Matrix<std::int64_t> z(2, 3);
  CHECK(smith_normal_form(z).rank == 0);
  CHECK(smith_normal_form(z).diagonal == std::vector<BigInt>{0, 0});
}

TEST_CASE("Smith normal form matches determinantal divisors") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = 1 + uniform_below(rng, 3);
    const std::size_t c = 1 + uniform_below(rng, 4);
    const auto m = random_matrix(rng, r, c, 6);
    const auto s = smith_normal_form(m);
    REQUIRE(s.diagonal.size() == std::min(r, c));
    for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    for (std::size_t i = s.rank; i < s.diagonal.size(); ++i) CHECK(s.diagonal[i] == 0);
    BigInt prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prod *= s.diagonal[k - 1];
      CHECK(prod == determinantal_divisor(m, k));
    }
  }
}

TEST_CASE("Smith normal form is invariant under unimodular changes") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 2 + uniform_below(rng, 3);
    const std::size_t c = 2 + uniform_below(rng, 3);
    const auto m = random_matrix(rng, r, c, 9);
    const auto moved = random_unimodular(rng, r) * m * random_unimodular(rng, c);
    CHECK(smith_normal_form(moved).diagonal == smith_normal_form(m).diagonal);
  }
  // Square matrices: product of the diagonal is |det|.
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_matrix(rng, 3, 3, 9);
    std::vector<std::vector<BigInt>> rows(3, std::vector<BigInt>(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) rows[i][j] = m(i, j);
    const auto s = smith_normal_form(m);
    BigInt prod = 1;
    for (const auto& d : s.diagonal) prod *= d;
    CHECK(prod == abs(det(rows)));
  }
}

TEST_CASE("abelianization examples") {
  const auto torsion = abelianization(parse_presentation("generators: a b\nrelator: a^2\nrelator: b^3\n"));
  CHECK(torsion.free_rank == 0);
  CHECK(torsion.torsion == std::vector<BigInt>{6});
  const auto comm = abelianization(parse_presentation("generators: a b c\nrelator: a b a^-1 b^-1\n"));
  CHECK(comm.free_rank == 3);
  CHECK(comm.torsion.empty());
  CHECK(abelianization(parse_presentation("generators: a b\n")).free_rank == 2);
  const auto klein = abelianization(parse_presentation("generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b\n"));
  CHECK(klein.free_rank == 0);
  CHECK(klein.torsion == std::vector<BigInt>{2, 2});
}

TEST_CASE("Hall recursion oracle") {
  CHECK(hall_counts(2, 4) == std::vector<BigInt>{0, 1, 3, 13, 71});
  CHECK(hall_counts(3, 4) == std::vector<BigInt>{0, 1, 7, 97, 2143});
}

TEST_CASE("free group subgroup counts") {
  for (std::size_t rank : {2u, 3u}) {
    CAPTURE(rank);
    const auto p = free_group(rank);
    const auto hall = hall_counts(rank, 4);
    const auto all = low_index_subgroups(p, 4, {.up_to_conjugacy = false});
    const auto classes = low_index_subgroups(p, 4);
    const auto by_index = count_by_index(all);
    const auto classes_by_index = count_by_index(classes);
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(n);
      CHECK(BigInt(by_index.at(n)) == hall[n]);
      const auto brute = brute_force(rank, static_cast<int>(n));
      CHECK(by_index.at(n) == brute.subgroups);
      CHECK(classes_by_index.at(n) == brute.classes);
    }
    // Regenerating every conjugate from the class representatives.
    std::set<CosetTable> regenerated;
    for (const auto& t : classes)
      for (const auto& c : conjugate_tables(t)) regenerated.insert(c);
    CHECK(regenerated.size() == all.size());
    CHECK(std::set<CosetTable>(all.begin(), all.end()) == regenerated);
  }
  const auto f2 = count_by_index(low_index_subgroups(free_group(2), 3));
  CHECK(f2.at(2) == 3);
  CHECK(f2.at(3) == 7);
}

TEST_CASE("tables are complete, closed and transitive") {
  const auto p = parse_presentation("generators: a b\nrelator: a^2\nrelator: b^3\n");
  const auto tables = low_index_subgroups(p, 6, {.up_to_conjugacy = false});
  CHECK(!tables.empty());
  for (const auto& t : tables) {
    CHECK(t.complete());
    CHECK(t.closes(p.relators()));
    CHECK(t.transitive());
    CHECK(standardize(t, 0) == t);
  }
  // Brute force agrees on this relator set too.
  const auto by_index = count_by_index(tables);
  const auto classes = count_by_index(low_index_subgroups(p, 4));
  for (int n = 1; n <= 4; ++n) {
    const auto brute = brute_force(2, n, p.relators());
    CHECK((by_index.contains(n) ? by_index.at(n) : 0) == brute.subgroups);
    CHECK((classes.contains(n) ? classes.at(n) : 0) == brute.classes);
  }
}

TEST_CASE("Z/2") {
  const auto tables = low_index_subgroups(parse_presentation("generators: a\nrelator: a^2\n"), 4);
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].size() == 1);
  CHECK(tables[1].size() == 2);
}

TEST_CASE("parallel search gives the same classes") {
  const auto p = free_group(2);
  CHECK(low_index_subgroups(p, 4, {.jobs = 4}) == low_index_subgroups(p, 4));
  CHECK(low_index_subgroups(p, 4, {.up_to_conjugacy = false, .jobs = 3}) ==
        low_index_subgroups(p, 4, {.up_to_conjugacy = false}));
}

TEST_CASE("refute_largeness_at_index") {
  const auto klein = refute_largeness_at_index(
      parse_presentation("generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b\n"), 4);
  CHECK(klein.verdict == Verdict::Refuted);
  CHECK(klein.witnesses().empty());
  // Klein four-group: itself, three index-2 subgroups, the trivial subgroup.
  CHECK(klein.records.size() == 5);
  for (const auto& r : klein.records) CHECK(r.abelian.free_rank == 0);

  const auto z2 = refute_largeness_at_index(parse_presentation("generators: a b\nrelator: a b a^-1 b^-1\n"), 2);
  CHECK(z2.verdict == Verdict::Inconclusive);
  CHECK(z2.records.size() == 4);
  for (const auto& r : z2.records) CHECK(r.abelian.free_rank == 2);

  const auto f3 = refute_largeness_at_index(parse_presentation("generators: a b c\n"), 1);
  CHECK(f3.verdict == Verdict::Inconclusive);
  REQUIRE(f3.records.size() == 1);
  CHECK(f3.records[0].abelian.free_rank == 3);
}

TEST_CASE("never refuted when a certificate exists") {
  const char* family[] = {
      "generators: a b c\nrelator: a b a^-1 b^-1\n",
      "generators: a b c\nrelator: a^2 b^2\n",
      "generators: a b c d\nrelator: a b a^-1 b^-1\nrelator: c d c^-1 d^-1\n",
      "generators: a b c\n",
  };
  for (const char* text : family) {
    const auto p = parse_presentation(text);
    const auto cert = certify_large(p);
    REQUIRE(cert.certificate);
    for (std::size_t n = cert.certificate->k; n <= 3; ++n) {
      CHECK(refute_largeness_at_index(p, n).verdict == Verdict::Inconclusive);
    }
  }
}
