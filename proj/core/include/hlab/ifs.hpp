#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlab/affine.hpp"
#include "hlab/box.hpp"
#include "hlab/expr.hpp"
#include "hlab/rational.hpp"
#include "hlab/word.hpp"

namespace hlab {

/// One member f_i of a system. `exact` is present for 1-D maps whose
/// coefficients were given exactly (integers or rational strings).
struct IndexedMap {
  std::string index;
  AffineContraction map;
  std::optional<ExactAffine1D> exact;
};

/// Declared bound for the tail of a 1-D family: for every m >= m_start the
/// image of the domain box lies within radius(m) of `point`, and radius(m)
/// decreases to 0.
struct FamilyTail {
  Rational point;
  Expr radius;
};

/// Closed-form 1-D family x ↦ slope(m)·x + intercept(m), m = m_start, m_start+1, ...
/// Only the first `truncate` members take part in attractor computations.
struct AffineFamily1D {
  Expr slope;
  Expr intercept;
  std::int64_t m_start = 1;
  std::size_t truncate = 0;
  std::optional<FamilyTail> tail;

  ExactAffine1D member(std::int64_t m) const;
};

/// The system S = (X, (f_i)_{i∈I}) on a certified domain box.
///
/// Construction validates: at least one map, distinct index symbols,
/// matching dimensions, and f_i(box) ⊆ box for every (truncated) map,
/// exactly in 1-D exact mode and up to 1e-12 otherwise.
class IifsSpec {
 public:
  IifsSpec(Box box, std::vector<IndexedMap> maps);

  /// Exact 1-D system from rational coefficients (slope, intercept) indexed "1", "2", ...
  static IifsSpec exact_1d(const ExactInterval& box, const std::vector<ExactAffine1D>& maps);
  static IifsSpec from_family(const ExactInterval& box, AffineFamily1D family);

  /// Throws SpecError naming the offending field or "line:col".
  static IifsSpec from_json(const nlohmann::json& doc);
  static IifsSpec parse(std::string_view text);
  static IifsSpec load(const std::filesystem::path& path);

  /// Same family with a different truncation; throws for explicit systems.
  IifsSpec with_truncation(std::size_t n) const;

  std::size_t dim() const noexcept { return box_.dim(); }
  const Box& box() const noexcept { return box_; }
  const std::optional<ExactInterval>& exact_box() const noexcept { return exact_box_; }
  const std::vector<IndexedMap>& maps() const noexcept { return maps_; }
  std::size_t size() const noexcept { return maps_.size(); }
  std::vector<std::string> alphabet() const;

  /// Throws InvalidArgument for an unknown letter.
  std::size_t index_of(std::string_view letter) const;
  const IndexedMap& map(std::string_view letter) const { return maps_[index_of(letter)]; }

  const std::optional<AffineFamily1D>& family() const noexcept { return family_; }
  std::optional<std::size_t> truncation() const;

  /// Every map carries exact coefficients (1-D only).
  bool is_exact() const noexcept;

  /// c = max lip_bound over the (truncated) maps.
  double contraction_c() const noexcept;
  /// Max |slope| in exact mode.
  std::optional<Rational> contraction_c_exact() const;

  /// Min declared lower bi-Lipschitz constant, if every map has one.
  std::optional<double> bilip_lower() const;

  nlohmann::json to_json() const;
  /// 16 hex digits of FNV-1a over the canonical JSON dump.
  std::string fingerprint() const;

 private:
  IifsSpec(Box box, std::optional<ExactInterval> exact_box, std::vector<IndexedMap> maps);

  Box box_;
  std::optional<ExactInterval> exact_box_;
  std::vector<IndexedMap> maps_;
  std::optional<AffineFamily1D> family_;
};

/// f_ω = f_{ω_1} ∘ ... ∘ f_{ω_m}; the empty word gives the identity.
AffineContraction compose_word(const IifsSpec& spec, const Word& w);
/// Exact version; requires spec.is_exact().
ExactAffine1D compose_word_exact(const IifsSpec& spec, const Word& w);

/// Rigorous enclosure of f_ω(box), nesting outward-rounded box images
/// letter by letter.
Box image_enclosure(const IifsSpec& spec, const Word& w, const Box& box);

/// Double-precision map for exact coefficients; lip = |slope| rounded, and
/// the bi-Lipschitz constant equals the Lipschitz constant in 1-D.
AffineContraction to_affine(const ExactAffine1D& f);

}  // namespace hlab
