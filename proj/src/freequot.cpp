#include "bpg/freequot.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "bpg/errors.hpp"

namespace bpg {

bool verify_certificate(const SubgroupPresentation& sub, const Assignment& a) {
  if (a.size() != sub.rank()) {
    throw UnassignedLabel("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(sub.rank()) + " labels");
  }
  for (const auto& w : a) {
    if (w.required_rank() > 2) return false;
  }
  for (const auto& r : sub.relators) {
    if (!substitute(r, a).empty()) return false;
  }
  const Word u{pos(kTargetU)};
  const Word v{pos(kTargetV)};
  return std::find(a.begin(), a.end(), u) != a.end() &&
         std::find(a.begin(), a.end(), v) != a.end();
}

namespace {

enum Value : std::uint8_t { kEmpty = 0, kU = 1, kV = 2 };

Assignment to_assignment(const std::vector<Value>& values) {
  Assignment a;
  a.reserve(values.size());
  for (Value v : values) {
    if (v == kU) {
      a.push_back(Word{pos(kTargetU)});
    } else if (v == kV) {
      a.push_back(Word{pos(kTargetV)});
    } else {
      a.emplace_back();
    }
  }
  return a;
}

class Search {
 public:
  Search(const SubgroupPresentation& sub, std::size_t budget)
      : sub_(sub), budget_(budget) {}

  SearchResult run() {
    SearchResult out;
    const std::size_t n = sub_.rank();
    if (n >= 2 && sub_.relators.empty()) {
      std::vector<Value> values(n, kEmpty);
      values[n - 2] = kU;
      values[n - 1] = kV;
      out.assignment = to_assignment(values);
      out.stats.phase = 1;
      return out;
    }
    if (n < 2) return out;

    if (auto found = kill_all_but_two()) {
      out.assignment = to_assignment(*found);
      out.stats.phase = 1;
    } else if (auto found = grid_patterns()) {
      out.assignment = to_assignment(*found);
      out.stats.phase = 2;
    } else if (auto found = backtrack()) {
      out.assignment = to_assignment(*found);
      out.stats.phase = 3;
    }
    out.stats.nodes = nodes_;
    return out;
  }

 private:
  bool spend() {
    if (nodes_ >= budget_) return false;
    ++nodes_;
    return true;
  }

  bool kills_relators(const std::vector<Value>& values) const {
    const Assignment a = to_assignment(values);
    return std::all_of(sub_.relators.begin(), sub_.relators.end(),
                       [&](const Word& r) { return substitute(r, a).empty(); });
  }

  std::optional<std::vector<Value>> try_candidate(const std::vector<Value>& values) {
    const bool u = std::find(values.begin(), values.end(), kU) != values.end();
    const bool v = std::find(values.begin(), values.end(), kV) != values.end();
    if (!u || !v) return std::nullopt;
    if (!spend()) return std::nullopt;
    if (kills_relators(values)) return values;
    return std::nullopt;
  }

  // Two survivors, later labels first; swapping u and v is an automorphism of
  // F_2, so unordered pairs suffice.
  std::optional<std::vector<Value>> kill_all_but_two() {
    const std::size_t n = sub_.rank();
    for (std::size_t p = n - 1; p-- > 0;) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (nodes_ >= budget_) return std::nullopt;
        std::vector<Value> values(n, kEmpty);
        values[p] = kU;
        values[q] = kV;
        if (auto hit = try_candidate(values)) return hit;
      }
    }
    return std::nullopt;
  }

  // Heuristic: labels grouped by base generator (rows) or by coset (columns);
  // labels alone in their row, like tau, are always killed.
  std::optional<std::vector<Value>> grid_patterns() {
    const std::size_t n = sub_.rank();
    std::map<Generator, std::vector<std::size_t>> by_gen;
    for (std::size_t l = 0; l < n; ++l) by_gen[sub_.labels[l].gen].push_back(l);
    std::vector<std::vector<std::size_t>> rows;
    std::vector<bool> in_grid(n, false);
    for (auto& [gen, labels] : by_gen) {
      if (labels.size() < 2) continue;
      for (auto l : labels) in_grid[l] = true;
      rows.push_back(labels);
    }
    std::map<Coset, std::vector<std::size_t>> by_coset;
    for (std::size_t l = 0; l < n; ++l) {
      if (in_grid[l]) by_coset[sub_.labels[l].coset].push_back(l);
    }
    std::vector<std::vector<std::size_t>> cols;
    for (auto& [coset, labels] : by_coset) cols.push_back(labels);

    for (const auto* groups : {&rows, &cols}) {
      for (const auto& group : *groups) {
        if (group.size() < 2) continue;
        std::vector<Value> values(n, kEmpty);
        for (std::size_t i = 0; i < group.size(); ++i) values[group[i]] = i % 2 ? kV : kU;
        if (auto hit = try_candidate(values)) return hit;
        if (nodes_ >= budget_) return std::nullopt;
      }
      for (std::size_t a = 0; a < groups->size(); ++a) {
        for (std::size_t b = a + 1; b < groups->size(); ++b) {
          std::vector<Value> values(n, kEmpty);
          for (auto l : (*groups)[a]) values[l] = kU;
          for (auto l : (*groups)[b]) values[l] = kV;
          if (auto hit = try_candidate(values)) return hit;
          if (nodes_ >= budget_) return std::nullopt;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<Value>> backtrack() {
    const std::size_t n = sub_.rank();
    // Each relator is checked once its last label is assigned.
    closing_.assign(n, {});
    for (std::size_t r = 0; r < sub_.relators.size(); ++r) {
      const auto need = sub_.relators[r].required_rank();
      if (need > 0) closing_[need - 1].push_back(r);
    }
    std::vector<Value> values(n, kEmpty);
    if (dfs(values, 0, false, false)) return values;
    return std::nullopt;
  }

  bool dfs(std::vector<Value>& values, std::size_t pos_, bool has_u, bool has_v) {
    const std::size_t n = values.size();
    const std::size_t remaining = n - pos_;
    if (!has_u && remaining < 2) return false;
    if (!has_v && remaining < 1) return false;
    if (pos_ == n) return has_u && has_v;

    // u must appear before v: swapping them is an automorphism of F_2.
    for (Value v : {kEmpty, kU, kV}) {
      if (v == kV && !has_u) continue;
      if (!spend()) return false;
      values[pos_] = v;
      if (closes(values, pos_) && dfs(values, pos_ + 1, has_u || v == kU, has_v || v == kV)) {
        return true;
      }
    }
    values[pos_] = kEmpty;
    return false;
  }

  bool closes(const std::vector<Value>& values, std::size_t pos_) const {
    if (closing_[pos_].empty()) return true;
    const Assignment a = to_assignment(values);
    for (auto r : closing_[pos_]) {
      if (!substitute(sub_.relators[r], a).empty()) return false;
    }
    return true;
  }

  const SubgroupPresentation& sub_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> closing_;
};

bool same_subgroup(const SubgroupPresentation& a, const SubgroupPresentation& b) {
  return a.names == b.names && a.labels == b.labels && a.relators == b.relators &&
         a.inclusion == b.inclusion && a.index == b.index && a.base_rank == b.base_rank;
}

}  // namespace

SearchResult search_certificate(const SubgroupPresentation& sub, std::size_t budget) {
  auto result = Search(sub, budget).run();
  if (result.assignment && !verify_certificate(sub, *result.assignment)) {
    throw std::logic_error("search produced an assignment that fails verification");
  }
  return result;
}

CertifyResult certify_large(const Presentation& p, std::optional<std::size_t> k_max,
                            std::size_t budget, unsigned jobs, std::size_t max_length) {
  if (!is_bp(p)) {
    throw NotBP("certify needs at least two more generators than relators");
  }
  const GoodPresentation good = make_good(p, {.max_length = max_length});
  CertifyResult out;
  out.k_max = k_max.value_or(good.base.max_relator_length() + 1);
  jobs = std::max(1u, jobs);

  struct Attempt {
    SubgroupPresentation sub;
    SearchResult result;
  };
  for (std::size_t first = 1; first <= out.k_max; first += jobs) {
    const std::size_t last = std::min(out.k_max, first + jobs - 1);
    std::vector<Attempt> wave(last - first + 1);
    auto attempt = [&](std::size_t i) {
      wave[i].sub = cyclic_cover(good, first + i);
      wave[i].result = search_certificate(wave[i].sub, budget);
    };
    if (wave.size() == 1) {
      attempt(0);
    } else {
      std::vector<std::jthread> workers;
      for (std::size_t i = 0; i < wave.size(); ++i) workers.emplace_back(attempt, i);
    }

    for (std::size_t i = 0; i < wave.size(); ++i) {
      auto& a = wave[i];
      const bool found = a.result.assignment.has_value();
      out.per_k.push_back({first + i, a.result.stats, found});
      if (!found) continue;

      LargenessCertificate cert{p, good.automorphism, good.t_index, first + i,
                                std::move(a.sub), std::move(*a.result.assignment)};
      if (!replay_certificate(cert)) {
        throw std::logic_error("certificate failed its end-to-end replay");
      }
      out.abelian_rank = abelianization(cert.subgroup).free_rank;
      if (out.abelian_rank < 2) {
        throw std::logic_error("verified certificate on a subgroup of abelian rank < 2");
      }
      out.certificate = std::move(cert);
      return out;
    }
  }
  return out;
}

bool replay_certificate(const LargenessCertificate& cert) {
  try {
    if (cert.automorphism.rank() != cert.original.rank()) return false;
    GoodPresentation good;
    good.base = apply_automorphism(cert.original, cert.automorphism);
    good.automorphism = cert.automorphism;
    good.t_index = cert.t_index;
    if (!verify_good(good, cert.original)) return false;
    if (cert.k == 0) return false;
    const auto rebuilt = cyclic_cover(good, cert.k);
    if (!same_subgroup(rebuilt, cert.subgroup)) return false;
    if (!verify_subgroup(rebuilt, good, cert.k)) return false;
    return verify_certificate(cert.subgroup, cert.assignment);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace bpg
