#include "bpg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bpg/cover.hpp"
#include "bpg/errors.hpp"
#include "bpg/euclid.hpp"
#include "bpg/freequot.hpp"
#include "bpg/goodpres.hpp"
#include "bpg/json_io.hpp"
#include "bpg/lowindex.hpp"
#include "bpg/presentation.hpp"

namespace bpg::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string out_path;
  std::string sidecar_path;
  std::string t_name;
  std::optional<std::size_t> k_max;
  std::size_t k = 1;
  std::size_t budget = 200000;
  std::size_t index = 1;
  std::size_t rank = 2;
  std::vector<std::size_t> lengths;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t max_length = 50'000'000;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Presentation load_presentation(const std::string& path) {
  try {
    return parse_presentation(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

// Writes `text` to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + cfg.out_path + "'");
  f << text;
}

// Without --sidecar the JSON rides along as a comment, so the output stays a
// valid presentation file.
std::string with_sidecar(const RunConfig& cfg, std::string text, const Json& sidecar) {
  if (cfg.sidecar_path.empty()) return text + "# sidecar: " + sidecar.dump() + "\n";
  std::ofstream f(cfg.sidecar_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + cfg.sidecar_path + "'");
  f << sidecar.dump(2) << '\n';
  return text;
}

int cmd_parse(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_presentation(cfg.input);
  std::ostringstream text;
  text << serialize(p);
  text << "# rank " << p.rank() << ", relators " << p.relator_count() << ", deficiency "
       << p.deficiency() << ", BP " << (is_bp(p) ? "yes" : "no") << '\n';
  emit(cfg, out, text.str());
  return kExitOk;
}

int cmd_goodpres(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_presentation(cfg.input);
  const auto g = make_good(p, {.max_length = cfg.max_length});
  emit(cfg, out, with_sidecar(cfg, serialize(g.base), good_sidecar(g)));
  return kExitOk;
}

// Uses the presentation unchanged with the named generator as t.
GoodPresentation as_good(const Presentation& p, const std::string& t_name) {
  const auto names = p.names();
  const auto it = std::find(names.begin(), names.end(), t_name);
  if (it == names.end()) throw Error("unknown generator '" + t_name + "' for --t");
  GoodPresentation g;
  g.base = p;
  g.automorphism = Automorphism(p.rank());
  g.t_index = static_cast<Generator>(it - names.begin());
  if (!verify_good(g, p)) {
    throw NotGoodPresentation("'" + t_name + "' has nonzero exponent sum in some relator");
  }
  return g;
}

int cmd_cover(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_presentation(cfg.input);
  const auto g = cfg.t_name.empty() ? make_good(p, {.max_length = cfg.max_length})
                                        : as_good(p, cfg.t_name);
  const auto sub = cyclic_cover(g, cfg.k);
  emit(cfg, out, with_sidecar(cfg, serialize(sub), cover_sidecar(sub, g, cfg.k)));
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = load_presentation(cfg.input);
  const auto result = certify_large(p, cfg.k_max, cfg.budget, cfg.jobs, cfg.max_length);
  emit(cfg, out, certify_report(result).dump(2) + "\n");
  if (result.certificate) return kExitOk;
  err << "no certificate found for k <= " << result.k_max
      << " (search failure is not a proof of non-largeness)\n";
  return kExitNegative;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json j;
  try {
    j = Json::parse(read_file(cfg.input));
  } catch (const Json::exception& e) {
    err << "error: " << cfg.input << ": " << e.what() << '\n';
    return kExitError;
  }
  const auto cert = certificate_from_json(j);
  if (!replay_certificate(cert)) {
    err << "certificate rejected\n";
    return kExitError;
  }
  out << "certificate verified: index " << cert.k << " subgroup surjects onto F(u, v)\n";
  return kExitOk;
}

int cmd_refute(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_presentation(cfg.input);
  const auto r = refute_largeness_at_index(p, cfg.index, cfg.jobs);
  emit(cfg, out, refutation_to_json(r).dump(2) + "\n");
  return r.verdict == Verdict::Refuted ? kExitOk : kExitNegative;
}

int cmd_growth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  GrowthConfig g;
  g.rank = cfg.rank;
  g.lengths = cfg.lengths;
  g.samples_per_length = cfg.samples;
  g.seed = cfg.seed;
  g.jobs = cfg.jobs;
  const auto rows = growth_experiment(g);
  emit(cfg, out, growth_csv(rows));
  const auto fit = fit_growth(rows);
  err << "# seed " << cfg.seed << ", rows " << fit.rows << ", steps <= " << fit.c
      << " * log2(length) + " << fit.d << ", envelope slope " << fit.envelope_slope
      << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Good presentations, cyclic covers and largeness certificates for "
               "presentations with at least two more generators than relators"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Write the result here instead of stdout");
  };
  auto positive = CLI::PositiveNumber;
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--max-length", cfg.max_length,
                     "Give up once a relator could exceed this many letters (0 = no cap)")
        ->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "Parse and normalize a presentation");
  parse->add_option("file", cfg.input)->required();
  add_out(parse);

  auto* good = app.add_subcommand("goodpres", "Compute a good presentation");
  good->add_option("file", cfg.input)->required();
  good->add_option("--sidecar", cfg.sidecar_path, "Write the JSON sidecar to this file");
  add_cap(good);
  add_out(good);

  auto* cover = app.add_subcommand("cover", "Present the index-k cyclic cover");
  cover->add_option("file", cfg.input)->required();
  cover->add_option("--k", cfg.k, "Index of the cover")->required()->check(positive);
  cover->add_option("--t", cfg.t_name,
                    "Use the presentation as given, with this zero-exponent generator as t");
  cover->add_option("--sidecar", cfg.sidecar_path, "Write the JSON sidecar to this file");
  add_cap(cover);
  add_out(cover);

  auto* certify = app.add_subcommand("certify", "Search for a largeness certificate");
  certify->add_option("file", cfg.input)->required();
  certify->add_option("--kmax", cfg.k_max, "Largest cover index to try")->check(positive);
  certify->add_option("--budget", cfg.budget, "Search node budget per cover");
  certify->add_option("--jobs", cfg.jobs, "Worker threads")->check(positive);
  add_cap(certify);
  add_out(certify);

  auto* verify = app.add_subcommand("verify", "Re-check a certificate JSON file");
  verify->add_option("certificate", cfg.input)->required();

  auto* refute = app.add_subcommand("refute", "Bounded refutation via low-index subgroups");
  refute->add_option("file", cfg.input)->required();
  refute->add_option("--index", cfg.index, "Index bound N")->required()->check(positive);
  refute->add_option("--jobs", cfg.jobs, "Worker threads")->check(positive);
  add_out(refute);

  auto* growth = app.add_subcommand("growth", "Length growth study of the Euclid moves");
  growth->add_option("--rank", cfg.rank, "Free group rank")->check(CLI::Range(2, 64));
  growth->add_option("--lengths", cfg.lengths, "Word lengths")
      ->required()
      ->delimiter(',')
      ->check(positive);
  growth->add_option("--samples", cfg.samples, "Samples per length")->check(positive);
  growth->add_option("--seed", cfg.seed, "Random seed");
  growth->add_option("--jobs", cfg.jobs, "Worker threads")->check(positive);
  add_out(growth);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*parse) return cmd_parse(cfg, out);
    if (*good) return cmd_goodpres(cfg, out);
    if (*cover) return cmd_cover(cfg, out);
    if (*certify) return cmd_certify(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*refute) return cmd_refute(cfg, out);
    if (*growth) return cmd_growth(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace bpg::cli
