#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "hlab/report.hpp"

namespace hlab {

/// Subset of a finite universe, one bit per element.
using Subset = boost::dynamic_bitset<>;

/// Nonempty finite set of distinct opaque labels.
class FiniteUniverse {
 public:
  explicit FiniteUniverse(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Throws InvalidArgument("element outside universe").
  std::size_t index_of(std::string_view label) const;

  Subset full() const { return Subset(size()).set(); }
  Subset none() const { return Subset(size()); }
  Subset subset(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(const Subset& s) const;

 private:
  std::vector<std::string> labels_;
};

/// A family of total self-maps of a finite universe, as lookup tables.
class SelfMapTable {
 public:
  /// tables[k][x] is the image of element x under map k.
  SelfMapTable(FiniteUniverse universe, std::vector<std::string> indices,
               std::vector<std::vector<std::size_t>> tables);

  const FiniteUniverse& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return tables_.size(); }
  const std::string& index(std::size_t k) const { return indices_[k]; }
  std::size_t image(std::size_t k, std::size_t x) const { return tables_[k][x]; }
  const std::vector<std::size_t>& table(std::size_t k) const { return tables_[k]; }

  /// |f_k^{-1}(y)| for each y.
  std::vector<std::size_t> fibre_sizes(std::size_t k) const;

 private:
  FiniteUniverse universe_;
  std::vector<std::string> indices_;
  std::vector<std::vector<std::size_t>> tables_;
};

/// F(A) = ⋃_k f_k(A).
Subset f_union(const SelfMapTable& maps, const Subset& a);

struct GfpResult {
  Subset gfp;
  /// Number of strict decreases before the chain became stationary.
  std::size_t steps = 0;
  /// A_0 ⊋ A_1 ⊋ ... ⊋ A_steps = gfp.
  std::vector<Subset> chain;
  /// f_union(gfp) == gfp, checked after the fact.
  bool is_fixed = false;
};

/// Iterates A_{n+1} = F(A_n) from A_0 = seed (default: the whole universe)
/// until it stabilises. A seed must satisfy F(seed) ⊆ seed.
GfpResult tk_gfp(const SelfMapTable& maps, const std::optional<Subset>& seed = std::nullopt);

/// Every A with F(A) = A, by enumerating all 2^|X| subsets in mask order.
/// Throws CapExceeded when |X| > 20.
std::vector<Subset> brute_force_fixed_subsets(const SelfMapTable& maps);

/// The element containing all others, if there is one.
std::optional<Subset> subset_maximum(const std::vector<Subset>& sets);

/// Pairwise disjoint images f_i(X) ∩ f_j(X) = ∅, with fibre sizes in the
/// details. Fails with the shared element as witness.
PropertyReport check_continuity_premises(const SelfMapTable& maps);

/// Input format: {"universe": [...], "maps": {"1": {"0": "0", ...}, ...}}.
/// Numbers and strings are both accepted as labels.
SelfMapTable parse_lattice_problem(const nlohmann::json& doc);
SelfMapTable parse_lattice_text(std::string_view text);
SelfMapTable load_lattice_problem(const std::filesystem::path& path);

/// {"gfp": [...], "steps": n, "fixed": bool, "premises": {...}}.
nlohmann::json gfp_report(const SelfMapTable& maps);

}  // namespace hlab
