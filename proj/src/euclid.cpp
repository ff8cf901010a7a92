#include "bpg/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "bpg/errors.hpp"

namespace bpg {

void GrowthTrace::record(const GrowthStep& step) {
  steps.push_back(step);
  product_p *= step.c + 1;
  final_length = step.length_after;
}

void GrowthTrace::append(const GrowthTrace& later) {
  steps.insert(steps.end(), later.steps.begin(), later.steps.end());
  product_p *= later.product_p;
  final_length = later.final_length;
}

bool GrowthTrace::step_bounds_hold() const {
  return std::all_of(steps.begin(), steps.end(), [](const GrowthStep& s) {
    return BigInt(s.length_after) <= BigInt(s.c + 1) * s.length_before;
  });
}

bool GrowthTrace::product_bound_holds() const {
  return BigInt(final_length) <= product_p * initial_length;
}

EuclidResult zero_pair(const Word& w, std::size_t rank, Generator i,
                       Generator j, std::size_t max_length) {
  if (i == j) throw InvalidPair("zero_pair needs two distinct generators");
  if (i >= rank || j >= rank) {
    throw RankMismatch("zero_pair index outside rank " + std::to_string(rank));
  }
  const auto x = exponent_vector(w, rank);
  EuclidResult r{Automorphism(rank), w, GrowthTrace::start(w.length())};
  std::int64_t xi = x[i];
  std::int64_t xj = x[j];
  if (xi == 0 || xj == 0) return r;

  auto push = [&](const NielsenMove& m) {
    if (max_length != 0 && move_length_bound(m, r.word) > max_length) {
      throw LengthLimitExceeded("Euclid step could exceed " + std::to_string(max_length) +
                                " letters");
    }
    r.word = apply_move(m, r.word, rank);
    r.automorphism.push(m);
  };
  if (xi < 0) {
    push(Inv{i});
    xi = -xi;
  }
  if (xj < 0) {
    push(Inv{j});
    xj = -xj;
  }

  while (xi != 0 && xj != 0) {
    // The smaller sum's generator s absorbs x_z^-c, shrinking X_z by c * X_s.
    Generator s;
    Generator z;
    if (xi < xj) {
      s = i;
      z = j;
    } else if (xj < xi) {
      s = j;
      z = i;
    } else {
      const auto oi = occurrences(r.word, i).total();
      const auto oj = occurrences(r.word, j).total();
      const bool i_survives = oi > oj || (oi == oj && i < j);
      s = i_survives ? i : j;
      z = i_survives ? j : i;
    }
    std::int64_t& xs = (s == i) ? xi : xj;
    std::int64_t& xz = (z == i) ? xi : xj;
    const std::int64_t c = xz / xs;
    const RightMult move{s, z, -c};
    const std::size_t before = r.word.length();
    push(move);
    xz -= c * xs;
    r.trace.record(GrowthStep{move, static_cast<std::uint64_t>(c), before,
                              r.word.length(), xi, xj});
  }
  return r;
}

EuclidResult zero_chain(const Word& w, std::size_t rank,
                        std::span<const Generator> chain,
                        std::size_t max_length) {
  EuclidResult r{Automorphism(rank), w, GrowthTrace::start(w.length())};
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Generator a = chain[k];
    const Generator b = chain[k + 1];
    auto step = zero_pair(r.word, rank, a, b, max_length);
    r.automorphism.append(step.automorphism);
    r.trace.append(step.trace);
    r.word = std::move(step.word);
    const auto x = exponent_vector(r.word, rank);
    if (x[b] == 0 && x[a] != 0) {
      const Swap swap{a, b};
      r.word = apply_move(swap, r.word, rank);
      r.automorphism.push(swap);
    }
  }
  return r;
}

EuclidResult zero_all_but_one(const Word& w, std::span<const Generator> order) {
  const std::size_t n = order.size();
  if (n < 2) throw MalformedInput("zero_all_but_one needs rank >= 2");
  std::vector<bool> seen(n, false);
  for (Generator g : order) {
    if (g >= n || seen[g]) {
      throw MalformedInput("order is not a permutation of 0.." +
                           std::to_string(n - 1));
    }
    seen[g] = true;
  }
  return zero_chain(w, n, order);
}

Word growth_sample_word(std::size_t rank, std::size_t length,
                        std::uint64_t seed, std::size_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(length),
                    static_cast<std::uint32_t>(sample)};
  std::mt19937_64 rng(seq);
  return random_reduced_word(rank, length, rng);
}

std::vector<GrowthRow> growth_experiment(const GrowthConfig& config) {
  if (config.rank < 2) throw MalformedInput("growth study needs rank >= 2");
  std::vector<Generator> order(config.rank);
  for (std::size_t g = 0; g < config.rank; ++g) order[g] = static_cast<Generator>(g);

  struct Task {
    std::size_t length;
    std::size_t sample;
  };
  std::vector<Task> tasks;
  for (std::size_t length : config.lengths) {
    if (length == 0) continue;
    for (std::size_t s = 0; s < config.samples_per_length; ++s) {
      tasks.push_back({length, s});
    }
  }

  std::vector<GrowthRow> rows(tasks.size());
  auto run = [&](std::size_t t) {
    const Word w =
        growth_sample_word(config.rank, tasks[t].length, config.seed, tasks[t].sample);
    auto r = zero_all_but_one(w, order);
    GrowthRow& row = rows[t];
    row.length = w.length();
    row.final_length = r.word.length();
    row.steps = r.trace.steps.size();
    row.product_p = r.trace.product_p;
    row.seed = config.seed;
    row.sample = tasks[t].sample;
    if (config.keep_traces) row.trace = std::move(r.trace);
  };

  // Each worker takes a fixed stride of tasks; rows land in task order.
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned k = 0; k < jobs; ++k) {
      workers.emplace_back([&, k] {
        for (std::size_t t = k; t < tasks.size(); t += jobs) run(t);
      });
    }
  }
  return rows;
}

std::string growth_csv(std::span<const GrowthRow> rows) {
  std::ostringstream out;
  out << "length,final_length,steps,productP,seed,sample\n";
  for (const auto& r : rows) {
    out << r.length << ',' << r.final_length << ',' << r.steps << ','
        << r.product_p << ',' << r.seed << ',' << r.sample << '\n';
  }
  return out.str();
}

GrowthFit fit_growth(std::span<const GrowthRow> rows) {
  GrowthFit fit;
  fit.rows = rows.size();
  if (rows.empty()) return fit;

  auto slope = [](const std::vector<std::pair<double, double>>& pts) {
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
  };

  std::vector<std::pair<double, double>> steps;
  std::map<std::size_t, std::size_t> envelope;
  for (const auto& r : rows) {
    steps.emplace_back(std::log2(static_cast<double>(r.length)),
                       static_cast<double>(r.steps));
    auto& best = envelope[r.length];
    best = std::max(best, r.final_length);
  }
  fit.c = slope(steps);
  fit.d = -std::numeric_limits<double>::infinity();
  for (auto [x, y] : steps) fit.d = std::max(fit.d, y - fit.c * x);

  std::vector<std::pair<double, double>> env;
  for (auto [len, best] : envelope) {
    env.emplace_back(std::log(static_cast<double>(len)),
                     std::log(static_cast<double>(std::max<std::size_t>(best, 1))));
  }
  fit.envelope_slope = env.size() >= 2 ? slope(env) : 0.0;
  return fit;
}

}  // namespace bpg
