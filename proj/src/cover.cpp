#include "bpg/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "bpg/errors.hpp"

namespace bpg {

bool CosetTable::complete() const {
  return std::find(data_.begin(), data_.end(), kUndefinedCoset) == data_.end();
}

std::optional<Coset> CosetTable::trace(Coset c, const Word& w) const {
  for (Letter l : w) {
    c = (*this)(c, l);
    if (c == kUndefinedCoset) return std::nullopt;
  }
  return c;
}

bool CosetTable::closes(std::span<const Word> relators) const {
  for (Coset c = 0; c < cosets_; ++c) {
    for (const auto& r : relators) {
      const auto end = trace(c, r);
      if (!end || *end != c) return false;
    }
  }
  return true;
}

bool CosetTable::transitive() const {
  if (cosets_ == 0) return true;
  std::vector<bool> seen(cosets_, false);
  std::deque<Coset> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Coset c = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < columns(); ++col) {
      const Coset d = at(c, col);
      if (d != kUndefinedCoset && !seen[d]) {
        seen[d] = true;
        ++count;
        queue.push_back(d);
      }
    }
  }
  return count == cosets_;
}

CosetTable zk_coset_table(const Presentation& p, Generator t, std::size_t k) {
  if (k == 0) throw MalformedInput("cover index must be positive");
  if (t >= p.rank()) throw RankMismatch("t outside presentation rank");
  CosetTable table(k, p.rank());
  for (Coset c = 0; c < k; ++c) {
    for (Generator g = 0; g < p.rank(); ++g) {
      table.set(c, pos(g), g == t ? static_cast<Coset>((c + 1) % k) : c);
    }
  }
  if (!table.closes(p.relators())) {
    throw NotGoodPresentation("a relator has t-exponent not divisible by " +
                              std::to_string(k));
  }
  return table;
}

CosetTable zk_coset_table(const GoodPresentation& g, std::size_t k) {
  return zk_coset_table(g.base, g.t_index, k);
}

SubgroupPresentation reidemeister_schreier(const Presentation& p,
                                           const CosetTable& table,
                                           std::span<const Generator> generator_order) {
  const std::size_t n = p.rank();
  if (table.rank() != n) throw RankMismatch("coset table rank differs from presentation");
  if (!table.complete()) throw IncompleteTable("coset table has undefined entries");
  if (!table.closes(p.relators())) {
    throw IncompleteTable("coset table is not compatible with the relators");
  }

  std::vector<Generator> order(generator_order.begin(), generator_order.end());
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), Generator{0});
  }
  if (order.size() != n) throw MalformedInput("generator order must list every generator");

  const std::size_t k = table.size();
  SubgroupPresentation sub;
  sub.index = k;
  sub.base_rank = n;

  // Breadth-first Schreier transversal over positive edges. For a finite
  // transitive action the positive generators already reach every coset.
  sub.transversal.assign(k, Word{});
  std::vector<bool> seen(k, false);
  std::vector<bool> tree(k * n, false);  // (coset, gen) is a tree edge
  std::deque<Coset> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const Coset c = queue.front();
    queue.pop_front();
    for (Generator g : order) {
      const Coset d = table(c, pos(g));
      if (seen[d]) continue;
      seen[d] = true;
      tree[c * n + g] = true;
      sub.transversal[d] = concat(sub.transversal[c], Word{pos(g)});
      queue.push_back(d);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw MalformedInput("coset table is not transitive");
  }

  // label_of[coset * n + gen], or -1 for tree edges.
  std::vector<std::int64_t> label_of(k * n, -1);
  for (Generator g : order) {
    for (Coset c = 0; c < k; ++c) {
      if (tree[c * n + g]) continue;
      label_of[c * n + g] = static_cast<std::int64_t>(sub.labels.size());
      sub.labels.push_back({c, g});
      sub.names.push_back(std::string(p.names()[g]) + "_" + std::to_string(c));
      WordBuilder inc;
      inc.append(sub.transversal[c]);
      inc.push(pos(g));
      inc.append_inverse(sub.transversal[table(c, pos(g))]);
      sub.inclusion.push_back(std::move(inc).build());
    }
  }

  for (const auto& r : p.relators()) {
    for (Coset c = 0; c < k; ++c) {
      WordBuilder out;
      Coset cur = c;
      for (Letter l : r) {
        if (l.sign() > 0) {
          const auto label = label_of[cur * n + l.gen()];
          if (label >= 0) out.push(pos(static_cast<Generator>(label)));
          cur = table(cur, l);
        } else {
          cur = table(cur, l);
          const auto label = label_of[cur * n + l.gen()];
          if (label >= 0) out.push(neg(static_cast<Generator>(label)));
        }
      }
      sub.relators.push_back(std::move(out).build());
    }
  }
  return sub;
}

SubgroupPresentation cyclic_cover(const GoodPresentation& g, std::size_t k) {
  const CosetTable table = zk_coset_table(g, k);
  std::vector<Generator> order{g.t_index};
  for (Generator i = 0; i < g.base.rank(); ++i) {
    if (i != g.t_index) order.push_back(i);
  }
  auto sub = reidemeister_schreier(g.base, table, order);
  for (std::size_t l = 0; l < sub.labels.size(); ++l) {
    const auto& label = sub.labels[l];
    sub.names[l] = label.gen == g.t_index
                       ? std::string("tau")
                       : "y_" + std::to_string(label.gen) + "_" + std::to_string(label.coset);
  }
  return sub;
}

bool verify_subgroup(const SubgroupPresentation& sub, const GoodPresentation& g,
                     std::size_t k) {
  const auto n = static_cast<std::int64_t>(g.base.rank());
  const auto m = static_cast<std::int64_t>(g.base.relator_count());
  const auto kk = static_cast<std::int64_t>(k);
  if (k == 0 || sub.index != k || sub.inclusion.size() != sub.labels.size()) return false;
  for (const auto& w : sub.inclusion) {
    if (w.required_rank() > g.base.rank()) return false;
    const auto x = exponent_vector(w, g.base.rank());
    if (x[g.t_index] % kk != 0) return false;
  }
  if (static_cast<std::int64_t>(sub.rank()) != (n - 1) * kk + 1) return false;
  if (static_cast<std::int64_t>(sub.relators.size()) != m * kk) return false;
  if (sub.deficiency() != (n - 1 - m) * kk + 1) return false;
  if (is_bp(g.base) && sub.deficiency() < kk + 1) return false;
  return true;
}

std::string serialize(const SubgroupPresentation& sub) {
  return serialize_presentation(sub.names, sub.relators);
}

}  // namespace bpg
