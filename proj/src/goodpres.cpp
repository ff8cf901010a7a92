#include "bpg/goodpres.hpp"

#include <numeric>
#include <string>

#include "bpg/errors.hpp"

namespace bpg {

GoodPresentation make_good(const Presentation& p, const MakeGoodOptions& options) {
  const std::size_t n = p.rank();
  const std::size_t m = p.relator_count();
  if (!is_bp(p)) {
    throw NotBP("presentation has " + std::to_string(n) + " generators and " +
                std::to_string(m) + " relators; need n >= m + 2");
  }

  GoodPresentation g;
  g.automorphism = Automorphism(n);

  if (options.shortcut_zero_column) {
    const auto x = exponent_matrix(p);
    for (std::size_t col = 0; col < n; ++col) {
      bool zero = true;
      for (std::size_t k = 0; k < m && zero; ++k) zero = x(k, col) == 0;
      if (!zero) continue;
      g.base = p;
      g.t_index = static_cast<Generator>(col);
      for (const auto& r : p.relators()) g.traces.push_back(GrowthTrace::start(r.length()));
      return g;
    }
  }

  // Working relators are kept freely (not cyclically) reduced so that the
  // final base equals cyclic_reduce(apply(automorphism, original)) exactly.
  // Traces follow the same words, so each records the full automorphism's
  // effect on one original relator.
  std::vector<Word> work(p.relators().begin(), p.relators().end());
  for (const auto& w : work) g.traces.push_back(GrowthTrace::start(w.length()));
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Generator> chain(n - k);
    std::iota(chain.begin(), chain.end(), Generator{0});
    const auto step = zero_chain(cyclic_reduce(work[k]), n, chain, options.max_length);
    for (const auto& move : step.automorphism.moves()) {
      for (std::size_t r = 0; r < m; ++r) {
        const std::size_t before = work[r].length();
        if (options.max_length != 0 && move_length_bound(move, work[r]) > options.max_length) {
          throw LengthLimitExceeded("relator " + std::to_string(r + 1) + " could exceed " +
                                    std::to_string(options.max_length) + " letters");
        }
        work[r] = apply_move(move, work[r], n);
        if (const auto* rm = std::get_if<RightMult>(&move)) {
          const auto c = static_cast<std::uint64_t>(rm->e < 0 ? -rm->e : rm->e);
          g.traces[r].record(GrowthStep{*rm, c, before, work[r].length(), 0, 0});
        }
      }
    }
    g.automorphism.append(step.automorphism);
  }

  std::vector<Word> base;
  base.reserve(m);
  for (const auto& w : work) base.push_back(cyclic_reduce(w));
  g.base = Presentation(std::vector<std::string>(p.names().begin(), p.names().end()),
                        std::move(base));
  g.t_index = 0;
  for (std::size_t r = 0; r < m; ++r) g.traces[r].final_length = g.base.relators()[r].length();
  return g;
}

bool verify_good(const GoodPresentation& g, const Presentation& original) {
  if (g.automorphism.rank() != original.rank() ||
      g.base.rank() != original.rank() || g.t_index >= original.rank()) {
    return false;
  }
  if (apply_automorphism(original, g.automorphism) != g.base) return false;
  const auto x = exponent_matrix(g.base);
  for (std::size_t k = 0; k < x.rows(); ++k) {
    if (x(k, g.t_index) != 0) return false;
  }
  return true;
}

bool has_triangular_shape(const Presentation& p) {
  const auto x = exponent_matrix(p);
  const std::size_t n = p.rank();
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t i = 0; i + k + 2 <= n; ++i) {
      if (x(k, i) != 0) return false;
    }
  }
  return true;
}

}  // namespace bpg
