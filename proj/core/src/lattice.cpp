#include "hlab/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hlab/error.hpp"

namespace hlab {
namespace {

using nlohmann::json;

std::string label_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return v.dump();
  throw SpecError(where, "expected a string or number label");
}

}  // namespace

FiniteUniverse::FiniteUniverse(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("a universe must be nonempty");
  std::set<std::string> seen;
  for (const std::string& l : labels_) {
    if (!seen.insert(l).second) throw InvalidArgument("duplicate universe element '" + l + "'");
  }
}

std::size_t FiniteUniverse::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw InvalidArgument("element outside universe: '" + std::string(label) + "'");
}

Subset FiniteUniverse::subset(const std::vector<std::string>& labels) const {
  Subset s = none();
  for (const std::string& l : labels) s.set(index_of(l));
  return s;
}

std::vector<std::string> FiniteUniverse::labels_of(const Subset& s) const {
  if (s.size() != size()) throw InvalidArgument("subset of a different universe");
  std::vector<std::string> out;
  for (std::size_t i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out.push_back(labels_[i]);
  return out;
}

SelfMapTable::SelfMapTable(FiniteUniverse universe, std::vector<std::string> indices,
                           std::vector<std::vector<std::size_t>> tables)
    : universe_(std::move(universe)), indices_(std::move(indices)), tables_(std::move(tables)) {
  if (indices_.size() != tables_.size()) throw InvalidArgument("one index per map table");
  std::set<std::string> seen;
  for (const std::string& i : indices_) {
    if (!seen.insert(i).second) throw InvalidArgument("duplicate map index '" + i + "'");
  }
  for (const auto& t : tables_) {
    if (t.size() != universe_.size()) throw InvalidArgument("map table is not total");
    for (std::size_t y : t) {
      if (y >= universe_.size()) throw InvalidArgument("element outside universe");
    }
  }
}

std::vector<std::size_t> SelfMapTable::fibre_sizes(std::size_t k) const {
  std::vector<std::size_t> out(universe_.size(), 0);
  for (std::size_t y : tables_[k]) ++out[y];
  return out;
}

Subset f_union(const SelfMapTable& maps, const Subset& a) {
  if (a.size() != maps.universe().size()) throw InvalidArgument("element outside universe");
  Subset out(a.size());
  for (std::size_t x = a.find_first(); x != Subset::npos; x = a.find_next(x)) {
    for (std::size_t k = 0; k < maps.size(); ++k) out.set(maps.image(k, x));
  }
  return out;
}

GfpResult tk_gfp(const SelfMapTable& maps, const std::optional<Subset>& seed) {
  Subset current = seed ? *seed : maps.universe().full();
  if (current.size() != maps.universe().size()) throw InvalidArgument("seed is a subset of a different universe");
  Subset next = f_union(maps, current);
  if (seed && !next.is_subset_of(current)) throw InvalidArgument("seed must satisfy F(seed) ⊆ seed");
  GfpResult out;
  out.chain.push_back(current);
  while (next != current) {
    current = std::move(next);
    out.chain.push_back(current);
    ++out.steps;
    next = f_union(maps, current);
  }
  out.gfp = current;
  out.is_fixed = f_union(maps, out.gfp) == out.gfp;
  return out;
}

std::vector<Subset> brute_force_fixed_subsets(const SelfMapTable& maps) {
  const std::size_t n = maps.universe().size();
  if (n > 20) throw CapExceeded("universe too large for subset enumeration (" + std::to_string(n) + " > 20)");
  std::vector<Subset> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Subset s(n, mask);
    if (f_union(maps, s) == s) out.push_back(std::move(s));
  }
  return out;
}

std::optional<Subset> subset_maximum(const std::vector<Subset>& sets) {
  if (sets.empty()) return std::nullopt;
  Subset candidate = sets.front();
  for (const Subset& s : sets) {
    if (candidate.is_subset_of(s)) candidate = s;
  }
  for (const Subset& s : sets) {
    if (!s.is_subset_of(candidate)) return std::nullopt;
  }
  return candidate;
}

PropertyReport check_continuity_premises(const SelfMapTable& maps) {
  const std::string name = "continuity-premises";
  const FiniteUniverse& u = maps.universe();
  std::vector<Subset> images;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    Subset img = u.none();
    for (std::size_t y : maps.table(k)) img.set(y);
    images.push_back(std::move(img));
  }
  json fibres = json::object();
  for (std::size_t k = 0; k < maps.size(); ++k) {
    auto sizes = maps.fibre_sizes(k);
    fibres[maps.index(k)] = *std::max_element(sizes.begin(), sizes.end());
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      Subset shared = images[i] & images[j];
      if (shared.any()) {
        auto r = PropertyReport::failing(
            name, Witness{{maps.index(i), maps.index(j), u.label(shared.find_first())},
                          "both maps send some element to " + u.label(shared.find_first())});
        r.details()["max_fibre_size"] = fibres;
        return r;
      }
    }
  }
  auto r = PropertyReport::holding(name, 0.0);
  r.set_note("images pairwise disjoint; fibres are finite on a finite universe");
  r.details()["max_fibre_size"] = fibres;
  return r;
}

SelfMapTable parse_lattice_problem(const json& doc) {
  if (!doc.is_object()) throw SpecError("$", "expected a JSON object");
  if (!doc.contains("universe") || !doc["universe"].is_array()) throw SpecError("universe", "expected an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < doc["universe"].size(); ++i) {
    labels.push_back(label_text(doc["universe"][i], "universe[" + std::to_string(i) + "]"));
  }
  FiniteUniverse universe = [&] {
    try {
      return FiniteUniverse(labels);
    } catch (const InvalidArgument& e) {
      throw SpecError("universe", e.what());
    }
  }();
  if (!doc.contains("maps") || !doc["maps"].is_object() || doc["maps"].empty()) {
    throw SpecError("maps", "expected a nonempty object of map tables");
  }
  std::vector<std::string> indices;
  std::vector<std::vector<std::size_t>> tables;
  for (const auto& [index, jt] : doc["maps"].items()) {
    const std::string where = "maps." + index;
    if (!jt.is_object()) throw SpecError(where, "expected an object element -> element");
    std::vector<std::size_t> table(universe.size(), universe.size());
    for (const auto& [from, to] : jt.items()) {
      try {
        table[universe.index_of(from)] = universe.index_of(label_text(to, where + "." + from));
      } catch (const InvalidArgument& e) {
        throw SpecError(where + "." + from, e.what());
      }
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] == universe.size()) throw SpecError(where, "no image for element '" + universe.label(x) + "'");
    }
    indices.push_back(index);
    tables.push_back(std::move(table));
  }
  return SelfMapTable(std::move(universe), std::move(indices), std::move(tables));
}

SelfMapTable parse_lattice_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError(std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
  return parse_lattice_problem(doc);
}

SelfMapTable load_lattice_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path.string(), "cannot open lattice file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice_text(buf.str());
}

json gfp_report(const SelfMapTable& maps) {
  GfpResult g = tk_gfp(maps);
  json j;
  j["gfp"] = maps.universe().labels_of(g.gfp);
  j["steps"] = g.steps;
  j["fixed"] = g.is_fixed;
  j["premises"] = check_continuity_premises(maps).to_json();
  return j;
}

}  // namespace hlab
