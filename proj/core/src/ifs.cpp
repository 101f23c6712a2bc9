#include "hlab/ifs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hlab/error.hpp"

namespace hlab {
namespace {

using nlohmann::json;

constexpr double kBoxTol = 1e-12;

struct Scalar {
  double value;
  std::optional<Rational> exact;
};

Scalar read_scalar(const json& v, const std::string& where) {
  if (v.is_number_integer() || v.is_number_unsigned()) {
    Rational q = v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
    return {to_double(q), q};
  }
  if (v.is_number_float()) {
    double x = v.get<double>();
    if (!std::isfinite(x)) throw SpecError(where, "number must be finite");
    return {x, std::nullopt};
  }
  if (v.is_string()) {
    try {
      Rational q = parse_rational(v.get<std::string>());
      return {to_double(q), q};
    } catch (const InvalidArgument& e) {
      throw SpecError(where, e.what());
    }
  }
  throw SpecError(where, "expected a number or a rational string");
}

Rational exact_or_float(const Scalar& s) { return s.exact ? *s.exact : exact_from_double(s.value); }

std::string index_symbol(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  throw SpecError(where, "index must be a string or an integer");
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void check_inside(const IndexedMap& m, const Box& box, const std::optional<ExactInterval>& exact_box,
                  const std::string& where) {
  bool inside = false;
  if (m.exact && exact_box) {
    inside = exact_box->contains(m.exact->image(*exact_box));
  } else {
    inside = box.contains(m.map.image(box), kBoxTol);
  }
  if (!inside) throw SpecError(where, "map " + m.index + " sends the domain box outside itself");
}

Expr read_expr(const json& v, const std::string& where) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number()) {
    text = v.dump();
  } else {
    throw SpecError(where, "expected an expression string");
  }
  try {
    return Expr::parse(text);
  } catch (const SpecError& e) {
    throw SpecError(where + " " + e.where(), e.what());
  }
}

json number_or_exact(double value, const std::optional<Rational>& exact) {
  if (exact) return to_string(*exact);
  return value;
}

}  // namespace

ExactAffine1D AffineFamily1D::member(std::int64_t m) const { return {slope.eval(m), intercept.eval(m)}; }

AffineContraction to_affine(const ExactAffine1D& f) {
  double a = to_double(f.slope);
  double lip = std::abs(a);
  std::optional<double> bilip;
  if (lip > 0.0) bilip = lip;
  return AffineContraction(1, {a}, {to_double(f.intercept)}, lip, bilip);
}

IifsSpec::IifsSpec(Box box, std::vector<IndexedMap> maps) : IifsSpec(std::move(box), std::nullopt, std::move(maps)) {}

IifsSpec::IifsSpec(Box box, std::optional<ExactInterval> exact_box, std::vector<IndexedMap> maps)
    : box_(std::move(box)), exact_box_(std::move(exact_box)), maps_(std::move(maps)) {
  if (maps_.empty()) throw SpecError("maps", "a system needs at least one map");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    const std::string where = "maps[" + std::to_string(k) + "]";
    if (maps_[k].index.empty() || maps_[k].index.find('.') != std::string::npos) {
      throw SpecError(where + ".index", "index symbols must be nonempty and contain no '.'");
    }
    if (!seen.insert(maps_[k].index).second) throw SpecError(where + ".index", "duplicate index " + maps_[k].index);
    if (maps_[k].map.dim() != box_.dim()) throw SpecError(where, "dimension differs from the box");
    if (maps_[k].exact && box_.dim() != 1) throw SpecError(where, "exact coefficients are 1-D only");
  }
  if (!is_exact()) {
    exact_box_.reset();
  } else if (!exact_box_) {
    exact_box_ = ExactInterval{exact_from_double(box_.lo()[0]), exact_from_double(box_.hi()[0])};
  }
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    check_inside(maps_[k], box_, exact_box_, "maps[" + std::to_string(k) + "]");
  }
}

IifsSpec IifsSpec::exact_1d(const ExactInterval& box, const std::vector<ExactAffine1D>& maps) {
  std::vector<IndexedMap> members;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    members.push_back({std::to_string(k + 1), to_affine(maps[k]), maps[k]});
  }
  return IifsSpec(box.to_box(), box, std::move(members));
}

IifsSpec IifsSpec::from_family(const ExactInterval& box, AffineFamily1D family) {
  if (family.truncate == 0) throw SpecError("family.truncate", "truncation must be >= 1");
  std::vector<ExactAffine1D> members;
  for (std::size_t k = 0; k < family.truncate; ++k) {
    std::int64_t m = family.m_start + static_cast<std::int64_t>(k);
    try {
      members.push_back(family.member(m));
    } catch (const InvalidArgument& e) {
      throw SpecError("family", e.what());
    }
  }
  std::vector<IndexedMap> indexed;
  for (std::size_t k = 0; k < members.size(); ++k) {
    std::int64_t m = family.m_start + static_cast<std::int64_t>(k);
    try {
      indexed.push_back({std::to_string(m), to_affine(members[k]), members[k]});
    } catch (const InvalidArgument& e) {
      throw SpecError("family", "member m=" + std::to_string(m) + ": " + e.what());
    }
  }
  IifsSpec spec(box.to_box(), box, std::move(indexed));
  spec.family_ = std::move(family);
  return spec;
}

IifsSpec IifsSpec::from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("$", "expected a JSON object");
  if (!doc.contains("box")) throw SpecError("box", "missing domain box");
  const json& jbox = doc["box"];
  if (!jbox.is_array() || jbox.empty()) throw SpecError("box", "expected [[lo, hi], ...]");
  std::size_t dim = jbox.size();
  if (doc.contains("dimension")) {
    const json& jd = doc["dimension"];
    if (!jd.is_number_integer() || jd.get<std::int64_t>() < 1) throw SpecError("dimension", "expected an integer >= 1");
    if (static_cast<std::size_t>(jd.get<std::int64_t>()) != dim) {
      throw SpecError("box", "box has " + std::to_string(dim) + " axes but dimension is " + jd.dump());
    }
  }
  std::vector<double> lo(dim);
  std::vector<double> hi(dim);
  std::vector<Scalar> lo_s;
  std::vector<Scalar> hi_s;
  for (std::size_t k = 0; k < dim; ++k) {
    const std::string where = "box[" + std::to_string(k) + "]";
    if (!jbox[k].is_array() || jbox[k].size() != 2) throw SpecError(where, "expected [lo, hi]");
    lo_s.push_back(read_scalar(jbox[k][0], where + "[0]"));
    hi_s.push_back(read_scalar(jbox[k][1], where + "[1]"));
    lo[k] = lo_s.back().value;
    hi[k] = hi_s.back().value;
    if (!(lo[k] <= hi[k])) throw SpecError(where, "lo must not exceed hi");
  }

  if (doc.contains("family")) {
    if (doc.contains("maps")) throw SpecError("family", "give either maps or family, not both");
    if (dim != 1) throw SpecError("family", "families are 1-D");
    const json& jf = doc["family"];
    if (!jf.is_object()) throw SpecError("family", "expected an object");
    std::string kind = jf.value("kind", "affine-1d");
    if (kind != "affine-1d") throw SpecError("family.kind", "unsupported kind '" + kind + "'");
    if (!jf.contains("slope")) throw SpecError("family.slope", "missing");
    if (!jf.contains("intercept")) throw SpecError("family.intercept", "missing");
    AffineFamily1D family{read_expr(jf["slope"], "family.slope"), read_expr(jf["intercept"], "family.intercept"), 1, 0,
                          std::nullopt};
    if (jf.contains("m_start")) {
      if (!jf["m_start"].is_number_integer()) throw SpecError("family.m_start", "expected an integer");
      family.m_start = jf["m_start"].get<std::int64_t>();
    }
    if (!jf.contains("truncate") || !jf["truncate"].is_number_integer() || jf["truncate"].get<std::int64_t>() < 1) {
      throw SpecError("family.truncate", "expected an integer >= 1");
    }
    family.truncate = jf["truncate"].get<std::size_t>();
    if (jf.contains("tail")) {
      const json& jt = jf["tail"];
      if (!jt.is_object() || !jt.contains("point") || !jt.contains("radius")) {
        throw SpecError("family.tail", "expected {\"point\": ..., \"radius\": \"expr(m)\"}");
      }
      Scalar point = read_scalar(jt["point"], "family.tail.point");
      family.tail = FamilyTail{exact_or_float(point), read_expr(jt["radius"], "family.tail.radius")};
    }
    return from_family(ExactInterval{exact_or_float(lo_s[0]), exact_or_float(hi_s[0])}, std::move(family));
  }

  if (!doc.contains("maps") || !doc["maps"].is_array()) throw SpecError("maps", "expected an array of maps");
  const json& jmaps = doc["maps"];
  std::vector<IndexedMap> maps;
  for (std::size_t k = 0; k < jmaps.size(); ++k) {
    const std::string where = "maps[" + std::to_string(k) + "]";
    const json& jm = jmaps[k];
    if (!jm.is_object()) throw SpecError(where, "expected an object");
    std::string index = jm.contains("index") ? index_symbol(jm["index"], where + ".index") : std::to_string(k + 1);

    if (!jm.contains("matrix")) throw SpecError(where + ".matrix", "missing");
    const json& jmat = jm["matrix"];
    std::vector<Scalar> entries;
    if (dim == 1 && !jmat.is_array()) {
      entries.push_back(read_scalar(jmat, where + ".matrix"));
    } else {
      if (!jmat.is_array() || jmat.size() != dim) throw SpecError(where + ".matrix", "expected " + std::to_string(dim) + " rows");
      for (std::size_t r = 0; r < dim; ++r) {
        const std::string rw = where + ".matrix[" + std::to_string(r) + "]";
        if (!jmat[r].is_array() || jmat[r].size() != dim) throw SpecError(rw, "expected " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c) entries.push_back(read_scalar(jmat[r][c], rw + "[" + std::to_string(c) + "]"));
      }
    }
    std::vector<Scalar> offsets;
    if (!jm.contains("offset")) throw SpecError(where + ".offset", "missing");
    const json& joff = jm["offset"];
    if (dim == 1 && !joff.is_array()) {
      offsets.push_back(read_scalar(joff, where + ".offset"));
    } else {
      if (!joff.is_array() || joff.size() != dim) throw SpecError(where + ".offset", "expected " + std::to_string(dim) + " entries");
      for (std::size_t c = 0; c < dim; ++c) offsets.push_back(read_scalar(joff[c], where + ".offset[" + std::to_string(c) + "]"));
    }

    std::optional<ExactAffine1D> exact;
    if (dim == 1 && entries[0].exact && offsets[0].exact) exact = ExactAffine1D{*entries[0].exact, *offsets[0].exact};

    std::vector<double> matrix;
    for (const Scalar& s : entries) matrix.push_back(s.value);
    std::vector<double> offset;
    for (const Scalar& s : offsets) offset.push_back(s.value);

    double lip = 0.0;
    if (jm.contains("lip")) {
      lip = read_scalar(jm["lip"], where + ".lip").value;
    } else {
      lip = operator_norm_estimate(dim, matrix);
    }
    std::optional<double> bilip;
    if (jm.contains("bilip_lower")) {
      bilip = read_scalar(jm["bilip_lower"], where + ".bilip_lower").value;
    } else if (dim == 1 && std::abs(matrix[0]) > 0.0) {
      bilip = std::min(std::abs(matrix[0]), lip);
    }
    try {
      maps.push_back({index, AffineContraction(dim, std::move(matrix), std::move(offset), lip, bilip), exact});
    } catch (const InvalidArgument& e) {
      throw SpecError(where, e.what());
    }
  }
  std::optional<ExactInterval> exact_box;
  if (dim == 1) exact_box = ExactInterval{exact_or_float(lo_s[0]), exact_or_float(hi_s[0])};
  return IifsSpec(Box(lo, hi), std::move(exact_box), std::move(maps));
}

IifsSpec IifsSpec::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, col] = line_col(text, byte);
    throw SpecError(std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
  return from_json(doc);
}

IifsSpec IifsSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path.string(), "cannot open spec file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const SpecError& e) {
    throw SpecError(path.filename().string() + ":" + e.where(), e.what());
  }
}

IifsSpec IifsSpec::with_truncation(std::size_t n) const {
  if (!family_) throw InvalidArgument("truncation applies to parametric families only");
  AffineFamily1D f = *family_;
  f.truncate = n;
  return from_family(*exact_box_, std::move(f));
}

std::vector<std::string> IifsSpec::alphabet() const {
  std::vector<std::string> out;
  out.reserve(maps_.size());
  for (const IndexedMap& m : maps_) out.push_back(m.index);
  return out;
}

std::size_t IifsSpec::index_of(std::string_view letter) const {
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    if (maps_[k].index == letter) return k;
  }
  throw InvalidArgument("unknown index letter '" + std::string(letter) + "'");
}

std::optional<std::size_t> IifsSpec::truncation() const {
  if (family_) return family_->truncate;
  return std::nullopt;
}

bool IifsSpec::is_exact() const noexcept {
  return std::all_of(maps_.begin(), maps_.end(), [](const IndexedMap& m) { return m.exact.has_value(); });
}

double IifsSpec::contraction_c() const noexcept {
  double c = 0.0;
  for (const IndexedMap& m : maps_) c = std::max(c, m.map.lip_bound());
  return c;
}

std::optional<Rational> IifsSpec::contraction_c_exact() const {
  if (!is_exact()) return std::nullopt;
  Rational c(0);
  for (const IndexedMap& m : maps_) c = std::max(c, m.exact->lip());
  return c;
}

std::optional<double> IifsSpec::bilip_lower() const {
  double l = 1.0;
  for (const IndexedMap& m : maps_) {
    if (!m.map.bilip_lower()) return std::nullopt;
    l = std::min(l, *m.map.bilip_lower());
  }
  return l;
}

json IifsSpec::to_json() const {
  json doc;
  doc["dimension"] = dim();
  json jbox = json::array();
  for (std::size_t k = 0; k < dim(); ++k) {
    if (exact_box_) {
      jbox.push_back({to_string(exact_box_->lo), to_string(exact_box_->hi)});
    } else {
      jbox.push_back({box_.lo()[k], box_.hi()[k]});
    }
  }
  doc["box"] = jbox;
  if (family_) {
    json jf{{"kind", "affine-1d"},
            {"slope", family_->slope.text()},
            {"intercept", family_->intercept.text()},
            {"m_start", family_->m_start},
            {"truncate", family_->truncate}};
    if (family_->tail) jf["tail"] = {{"point", to_string(family_->tail->point)}, {"radius", family_->tail->radius.text()}};
    doc["family"] = jf;
    return doc;
  }
  json jmaps = json::array();
  for (const IndexedMap& m : maps_) {
    json jm;
    jm["index"] = m.index;
    json rows = json::array();
    for (std::size_t r = 0; r < dim(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < dim(); ++c) {
        row.push_back(number_or_exact(m.map.entry(r, c), m.exact ? std::optional<Rational>(m.exact->slope) : std::nullopt));
      }
      rows.push_back(row);
    }
    jm["matrix"] = rows;
    json off = json::array();
    for (std::size_t r = 0; r < dim(); ++r) {
      off.push_back(number_or_exact(m.map.offset()[r], m.exact ? std::optional<Rational>(m.exact->intercept) : std::nullopt));
    }
    jm["offset"] = off;
    jm["lip"] = m.map.lip_bound();
    if (m.map.bilip_lower()) jm["bilip_lower"] = *m.map.bilip_lower();
    jmaps.push_back(jm);
  }
  doc["maps"] = jmaps;
  return doc;
}

std::string IifsSpec::fingerprint() const {
  std::string canonical = to_json().dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AffineContraction compose_word(const IifsSpec& spec, const Word& w) {
  AffineContraction f = AffineContraction::identity(spec.dim());
  for (std::size_t k = w.size(); k-- > 0;) f = compose(spec.map(w[k]).map, f);
  return f;
}

Box image_enclosure(const IifsSpec& spec, const Word& w, const Box& box) {
  Box out = box;
  for (std::size_t k = w.size(); k-- > 0;) out = spec.map(w[k]).map.image(out);
  return out;
}

ExactAffine1D compose_word_exact(const IifsSpec& spec, const Word& w) {
  if (!spec.is_exact()) throw InvalidArgument("exact composition needs exact coefficients");
  ExactAffine1D f{Rational(1), Rational(0)};
  for (std::size_t k = w.size(); k-- > 0;) f = compose(*spec.map(w[k]).exact, f);
  return f;
}

}  // namespace hlab
