#include <doctest.h>

#include "bpg/errors.hpp"
#include "bpg/freequot.hpp"
#include "bpg/lowindex.hpp"

using namespace bpg;

namespace {

const Word kEmpty{};
const Word kU{pos(kTargetU)};
const Word kV{pos(kTargetV)};

SubgroupPresentation index_one(const Presentation& p) {
  GoodPresentation g;
  g.base = p;
  g.automorphism = Automorphism(p.rank());
  g.t_index = 0;
  return cyclic_cover(g, 1);
}

// Oracle: substitute letter by letter, then cancel with a plain stack.
bool maps_to_identity(const Word& relator, const Assignment& a) {
  std::vector<Letter> stack;
  for (Letter l : relator) {
    const Word image = l.sign() > 0 ? a[l.gen()] : invert(a[l.gen()]);
    for (Letter m : image) {
      if (!stack.empty() && stack.back() == m.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(m);
      }
    }
  }
  return stack.empty();
}

Presentation pres(const char* text) { return parse_presentation(text); }

}  // namespace

TEST_CASE("verify_certificate examples") {
  const auto sub = index_one(pres("generators: a b c\nrelator: a b a^-1 b^-1\n"));
  CHECK(verify_certificate(sub, {kEmpty, kU, kV}));
  CHECK(!verify_certificate(sub, {kEmpty, kU, kEmpty}));
  CHECK(!verify_certificate(sub, {kU, kU, kU}));
  CHECK_THROWS_AS(verify_certificate(sub, {kEmpty, kU}), UnassignedLabel);

  const auto sq = index_one(pres("generators: a b c\nrelator: a^2\n"));
  CHECK(!verify_certificate(sq, {kU, kEmpty, kV}));
  CHECK(verify_certificate(sq, {kEmpty, kU, kV}));

  // Longer words are accepted when relators still die.
  const Word uv = concat(kU, kV);
  CHECK(verify_certificate(sub, {uv, uv, kV}) == false);  // u is never an assigned value
  CHECK(verify_certificate(sub, {uv, kU, kV}) == false);  // [uv, u] != 1
  CHECK(verify_certificate(sub, {kU, kU, kV}));
}

TEST_CASE("verifier agrees with the substitution oracle") {
  const auto sub = index_one(pres("generators: a b c d\nrelator: a b a^-1 b^-1\nrelator: c^2 d^-1 c^-2 d\n"));
  const std::vector<Word> values{kEmpty, kU, kV, invert(kU)};
  std::size_t agree = 0;
  for (std::size_t code = 0; code < 256; ++code) {
    Assignment a;
    for (std::size_t i = 0, c = code; i < 4; ++i, c /= 4) a.push_back(values[c % 4]);
    bool onto_u = false, onto_v = false;
    for (const auto& w : a) {
      onto_u |= w == kU;
      onto_v |= w == kV;
    }
    bool hom = true;
    for (const auto& r : sub.relators) hom &= maps_to_identity(r, a);
    CHECK(verify_certificate(sub, a) == (hom && onto_u && onto_v));
    agree += hom && onto_u && onto_v;
  }
  CHECK(agree > 0);
}

TEST_CASE("search_certificate examples") {
  const auto sub = index_one(pres("generators: a b c\nrelator: a b a^-1 b^-1\n"));
  const auto r = search_certificate(sub, 1000);
  REQUIRE(r.assignment);
  CHECK(r.stats.phase == 1);
  CHECK(*r.assignment == Assignment{kEmpty, kU, kV});

  const auto free = index_one(pres("generators: a b c\n"));
  const auto f = search_certificate(free, 0);
  REQUIRE(f.assignment);
  CHECK(verify_certificate(free, *f.assignment));

  const auto none = search_certificate(sub, 0);
  CHECK(!none.assignment);
  CHECK(none.stats.phase == 0);

  // Z/2 x Z/2 x Z/2 has no surjection onto F_2.
  const auto finite = index_one(pres("generators: a b c\nrelator: a^2\nrelator: b^2\nrelator: c^2\n"));
  CHECK(!search_certificate(finite, 100000).assignment);
}

TEST_CASE("certify_large on the curated family") {
  const char* family[] = {
      "generators: a b c\nrelator: a b a^-1 b^-1\n",
      "generators: a b c\nrelator: a^2 b^2\n",
      "generators: a b c d\nrelator: a b a^-1 b^-1\nrelator: c d c^-1 d^-1\n",
      "generators: a b c\n",
      "generators: a b c d\n",
      "generators: a b c d e\n",
  };
  for (const char* text : family) {
    CAPTURE(text);
    const auto p = pres(text);
    const auto r = certify_large(p);
    REQUIRE(r.certificate);
    const auto& c = *r.certificate;
    CHECK(c.k <= r.k_max);
    CHECK(verify_certificate(c.subgroup, c.assignment));
    CHECK(replay_certificate(c));
    CHECK(abelianization(c.subgroup).free_rank >= 2);
    CHECK(r.abelian_rank == abelianization(c.subgroup).free_rank);
    CHECK(r.per_k.back().found);

    const auto again = certify_large(p, std::nullopt, 200000, 4);
    REQUIRE(again.certificate);
    CHECK(again.certificate->k == c.k);
    CHECK(again.certificate->assignment == c.assignment);
  }
}

TEST_CASE("a^2 b^2 certifies at index 1") {
  const auto p = pres("generators: a b c\nrelator: a^2 b^2\n");
  const auto r = certify_large(p);
  REQUIRE(r.certificate);
  CHECK(r.certificate->k == 1);
  // The single good relator dies once its non-t letters are killed.
  const auto& c = *r.certificate;
  for (const auto& rel : c.subgroup.relators) CHECK(maps_to_identity(rel, c.assignment));
}

TEST_CASE("replay rejects tampered certificates") {
  const auto p = pres("generators: a b c\nrelator: a b a^-1 b^-1\n");
  const auto c = *certify_large(p).certificate;

  auto bad_assignment = c;
  bad_assignment.assignment[0] = kU;
  bad_assignment.assignment[1] = kU;
  bad_assignment.assignment[2] = kU;
  CHECK(!replay_certificate(bad_assignment));

  auto bad_k = c;
  bad_k.k = 2;
  CHECK(!replay_certificate(bad_k));

  auto bad_original = c;
  bad_original.original = pres("generators: a b c\nrelator: a^2\n");
  CHECK(!replay_certificate(bad_original));
}

TEST_CASE("non-BP input is rejected") {
  CHECK_THROWS_AS(certify_large(pres("generators: a b\nrelator: a b a^-1 b^-1\n")), NotBP);
}
