#include "bpg/json_io.hpp"

#include <limits>
#include <string>

#include "bpg/errors.hpp"

namespace bpg {

namespace {

Json big_to_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() &&
      v >= std::numeric_limits<std::int64_t>::min()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw MalformedInput(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

Generator index_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) {
    throw MalformedInput(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<Generator>();
}

std::vector<std::string> string_list(const Json& j) {
  if (!j.is_array()) throw MalformedInput("expected a JSON array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw MalformedInput("expected a JSON array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Json words_to_json(std::span<const Word> words, std::span<const std::string> names) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(format_word(w, names));
  return out;
}

std::vector<Word> words_from_json(const Json& j, std::span<const std::string> names) {
  std::vector<Word> out;
  for (const auto& s : string_list(j)) out.push_back(parse_word(s, names));
  return out;
}

const std::vector<std::string> kTargetNames{"u", "v"};

}  // namespace

Json move_to_json(const NielsenMove& m) {
  if (const auto* v = std::get_if<Inv>(&m)) return {{"op", "inv"}, {"i", v->i}};
  if (const auto* v = std::get_if<RightMult>(&m)) {
    return {{"op", "mul"}, {"i", v->i}, {"j", v->j}, {"e", v->e}};
  }
  const auto& s = std::get<Swap>(m);
  return {{"op", "swap"}, {"i", s.i}, {"j", s.j}};
}

NielsenMove move_from_json(const Json& j) {
  const auto& op = field(j, "op");
  if (op == "inv") return Inv{index_field(j, "i")};
  if (op == "swap") return Swap{index_field(j, "i"), index_field(j, "j")};
  if (op == "mul") {
    const auto& e = field(j, "e");
    if (!e.is_number_integer()) throw MalformedInput("field 'e' must be an integer");
    return RightMult{index_field(j, "i"), index_field(j, "j"), e.get<std::int64_t>()};
  }
  throw MalformedInput("unknown move op " + op.dump());
}

Json automorphism_to_json(const Automorphism& a) {
  Json moves = Json::array();
  for (const auto& m : a.moves()) moves.push_back(move_to_json(m));
  return {{"rank", a.rank()}, {"moves", moves}};
}

Automorphism automorphism_from_json(const Json& j) {
  const auto rank = index_field(j, "rank");
  std::vector<NielsenMove> moves;
  const auto& list = field(j, "moves");
  if (!list.is_array()) throw MalformedInput("'moves' must be an array");
  for (const auto& m : list) moves.push_back(move_from_json(m));
  return Automorphism(rank, std::move(moves));
}

Json presentation_to_json(const Presentation& p) {
  return {{"generators", p.names()}, {"relators", words_to_json(p.relators(), p.names())}};
}

Presentation presentation_from_json(const Json& j) {
  auto names = string_list(field(j, "generators"));
  auto relators = words_from_json(field(j, "relators"), names);
  return Presentation(std::move(names), std::move(relators));
}

Json good_sidecar(const GoodPresentation& g) {
  Json per = Json::array();
  for (const auto& t : g.traces) {
    per.push_back({{"initial_length", t.initial_length},
                   {"final_length", t.final_length},
                   {"productP", t.product_p.str()},
                   {"steps", t.steps.size()}});
  }
  return {{"format", kJsonFormat},
          {"automorphism", automorphism_to_json(g.automorphism)},
          {"t_index", g.t_index},
          {"t_name", g.base.names()[g.t_index]},
          {"relators", per}};
}

Json subgroup_to_json(const SubgroupPresentation& sub,
                      std::span<const std::string> base_names) {
  Json labels = Json::array();
  for (const auto& l : sub.labels) labels.push_back({{"coset", l.coset}, {"gen", l.gen}});
  return {{"generators", sub.names},
          {"labels", labels},
          {"relators", words_to_json(sub.relators, sub.names)},
          {"inclusion", words_to_json(sub.inclusion, base_names)},
          {"transversal", words_to_json(sub.transversal, base_names)},
          {"index", sub.index},
          {"base_rank", sub.base_rank}};
}

SubgroupPresentation subgroup_from_json(const Json& j,
                                        std::span<const std::string> base_names) {
  SubgroupPresentation sub;
  sub.names = string_list(field(j, "generators"));
  const auto& labels = field(j, "labels");
  if (!labels.is_array()) throw MalformedInput("'labels' must be an array");
  for (const auto& l : labels) {
    sub.labels.push_back({index_field(l, "coset"), index_field(l, "gen")});
  }
  sub.relators = words_from_json(field(j, "relators"), sub.names);
  sub.inclusion = words_from_json(field(j, "inclusion"), base_names);
  sub.transversal = words_from_json(field(j, "transversal"), base_names);
  sub.index = index_field(j, "index");
  sub.base_rank = index_field(j, "base_rank");
  if (sub.labels.size() != sub.names.size() || sub.inclusion.size() != sub.names.size()) {
    throw MalformedInput("subgroup label, name and inclusion counts differ");
  }
  return sub;
}

Json cover_sidecar(const SubgroupPresentation& sub, const GoodPresentation& g,
                   std::size_t k) {
  const auto n = static_cast<std::int64_t>(g.base.rank());
  const auto m = static_cast<std::int64_t>(g.base.relator_count());
  const auto kk = static_cast<std::int64_t>(k);
  Json inclusion = Json::object();
  for (std::size_t l = 0; l < sub.rank(); ++l) {
    inclusion[sub.names[l]] = format_word(sub.inclusion[l], g.base.names());
  }
  return {{"format", kJsonFormat},
          {"k", k},
          {"t_index", g.t_index},
          {"automorphism", automorphism_to_json(g.automorphism)},
          {"inclusion", inclusion},
          {"checks",
           {{"generators", sub.rank()},
            {"expected_generators", (n - 1) * kk + 1},
            {"relators", sub.relators.size()},
            {"expected_relators", m * kk},
            {"deficiency", sub.deficiency()},
            {"expected_deficiency", (n - 1 - m) * kk + 1},
            {"verified", verify_subgroup(sub, g, k)}}}};
}

Json certificate_to_json(const LargenessCertificate& c) {
  Json assignment = Json::object();
  for (std::size_t l = 0; l < c.subgroup.rank(); ++l) {
    assignment[c.subgroup.names[l]] = format_word(c.assignment[l], kTargetNames);
  }
  return {{"format", kJsonFormat},
          {"kind", "largeness-certificate"},
          {"original", presentation_to_json(c.original)},
          {"automorphism", automorphism_to_json(c.automorphism)},
          {"t_index", c.t_index},
          {"k", c.k},
          {"subgroup", subgroup_to_json(c.subgroup, c.original.names())},
          {"target", kTargetNames},
          {"assignment", assignment}};
}

LargenessCertificate certificate_from_json(const Json& j) {
  if (field(j, "format") != kJsonFormat) throw MalformedInput("unsupported format version");
  LargenessCertificate c;
  c.original = presentation_from_json(field(j, "original"));
  c.automorphism = automorphism_from_json(field(j, "automorphism"));
  c.t_index = index_field(j, "t_index");
  c.k = index_field(j, "k");
  c.subgroup = subgroup_from_json(field(j, "subgroup"), c.original.names());
  const auto& assignment = field(j, "assignment");
  if (!assignment.is_object()) throw MalformedInput("'assignment' must be an object");
  for (const auto& name : c.subgroup.names) {
    if (!assignment.contains(name) || !assignment.at(name).is_string()) {
      throw UnassignedLabel("no assignment for label '" + name + "'");
    }
    c.assignment.push_back(parse_word(assignment.at(name).get<std::string>(), kTargetNames));
  }
  return c;
}

Json certify_report(const CertifyResult& r) {
  Json per_k = Json::array();
  for (const auto& s : r.per_k) {
    per_k.push_back({{"k", s.k}, {"found", s.found}, {"nodes", s.search.nodes},
                     {"phase", s.search.phase}});
  }
  Json out = {{"format", kJsonFormat},
              {"kind", r.certificate ? "largeness-certificate" : "not-found"},
              {"k_max", r.k_max},
              {"search", per_k}};
  if (r.certificate) {
    out = certificate_to_json(*r.certificate);
    out["k_max"] = r.k_max;
    out["search"] = per_k;
    out["abelian_rank"] = r.abelian_rank;
  }
  return out;
}

Json refutation_to_json(const Refutation& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json torsion = Json::array();
    for (const auto& t : rec.abelian.torsion) torsion.push_back(big_to_json(t));
    records.push_back({{"index", rec.index},
                       {"table", std::vector<Coset>(rec.table.data().begin(),
                                                    rec.table.data().end())},
                       {"columns", rec.table.columns()},
                       {"free_rank", rec.abelian.free_rank},
                       {"torsion", torsion}});
  }
  return {{"format", kJsonFormat},
          {"kind", "refutation"},
          {"presentation", presentation_to_json(r.presentation)},
          {"N", r.max_index},
          {"classes", records},
          {"verdict", r.verdict == Verdict::Refuted ? "Refuted" : "Inconclusive"}};
}

}  // namespace bpg
