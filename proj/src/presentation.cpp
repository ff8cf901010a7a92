#include "bpg/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "bpg/errors.hpp"

namespace bpg {

Presentation::Presentation(std::vector<std::string> names,
                           std::vector<Word> relators)
    : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& name : names_) {
    if (!is_valid_name(name)) {
      throw MalformedInput("invalid generator name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw MalformedInput("duplicate generator name '" + name + "'");
    }
  }
  relators_.reserve(relators.size());
  for (auto& r : relators) {
    if (r.required_rank() > names_.size()) {
      throw MalformedInput("relator uses a generator outside rank " +
                           std::to_string(names_.size()));
    }
    Word c = cyclic_reduce(r);
    if (c.empty()) throw MalformedInput("empty relator");
    relators_.push_back(std::move(c));
  }
}

std::size_t Presentation::max_relator_length() const {
  std::size_t m = 0;
  for (const auto& r : relators_) m = std::max(m, r.length());
  return m;
}

std::int64_t Presentation::deficiency() const {
  return static_cast<std::int64_t>(rank()) -
         static_cast<std::int64_t>(relator_count());
}

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  offset = 0;
  while (offset < s.size() && std::isspace(static_cast<unsigned char>(s[offset])))
    ++offset;
  s.remove_prefix(offset);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::optional<std::vector<std::string>> names;
  std::vector<Word> relators;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t lead = 0;
    const std::string_view body = trim(line, lead);
    if (body.empty()) continue;

    const auto colon = body.find(':');
    const std::string_view key = body.substr(0, colon);
    if (colon == std::string_view::npos ||
        (key != "generators" && key != "relator")) {
      throw ParseError(line_no, lead + 1,
                       "expected 'generators:' or 'relator:'");
    }
    const std::string_view rest = body.substr(colon + 1);
    const std::size_t rest_col = lead + colon + 1;

    if (key == "generators") {
      if (names) {
        throw ParseError(line_no, lead + 1, "duplicate 'generators:' line");
      }
      names.emplace();
      std::size_t i = 0;
      while (i < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[i]))) {
          ++i;
          continue;
        }
        const std::size_t start = i;
        while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])))
          ++i;
        std::string name(rest.substr(start, i - start));
        const std::size_t col = rest_col + start + 1;
        if (!is_valid_name(name)) {
          throw ParseError(line_no, col, "invalid generator name '" + name + "'");
        }
        if (std::find(names->begin(), names->end(), name) != names->end()) {
          throw ParseError(line_no, col, "duplicate generator name '" + name + "'");
        }
        names->push_back(std::move(name));
      }
      continue;
    }

    if (!names) {
      throw ParseError(line_no, lead + 1, "'relator:' before 'generators:'");
    }
    Word w = parse_word(rest, *names, line_no, rest_col);
    if (cyclic_reduce(w).empty()) {
      throw ParseError(line_no, lead + 1, "empty relator");
    }
    relators.push_back(std::move(w));
  }
  if (!names) throw ParseError(1, 1, "missing 'generators:' line");
  return Presentation(std::move(*names), std::move(relators));
}

std::string serialize_presentation(std::span<const std::string> names,
                                   std::span<const Word> relators) {
  std::string out = "generators:";
  for (const auto& n : names) {
    out += ' ';
    out += n;
  }
  out += '\n';
  for (const auto& r : relators) {
    out += "relator: ";
    out += format_word(r, names);
    out += '\n';
  }
  return out;
}

std::string serialize(const Presentation& p) {
  return serialize_presentation(p.names(), p.relators());
}

Matrix<std::int64_t> exponent_matrix(std::span<const Word> relators,
                                     std::size_t rank) {
  Matrix<std::int64_t> m(relators.size(), rank);
  for (std::size_t k = 0; k < relators.size(); ++k) {
    const auto x = exponent_vector(relators[k], rank);
    for (std::size_t i = 0; i < rank; ++i) m(k, i) = x[i];
  }
  return m;
}

Matrix<std::int64_t> exponent_matrix(const Presentation& p) {
  return exponent_matrix(p.relators(), p.rank());
}

bool is_bp(const Presentation& p) { return p.rank() >= p.relator_count() + 2; }

Presentation apply_automorphism(const Presentation& p, const Automorphism& a) {
  if (a.rank() != p.rank()) {
    throw RankMismatch("automorphism rank " + std::to_string(a.rank()) +
                       " does not match presentation rank " +
                       std::to_string(p.rank()));
  }
  std::vector<Word> relators;
  relators.reserve(p.relator_count());
  for (const auto& r : p.relators()) relators.push_back(cyclic_reduce(apply(a, r)));
  return Presentation(std::vector<std::string>(p.names().begin(), p.names().end()),
                      std::move(relators));
}

}  // namespace bpg
