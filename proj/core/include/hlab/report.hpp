#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hlab {

enum class Verdict { holds, fails, inconclusive };

std::string to_string(Verdict v);

/// Evidence attached to a failing (or informative) verdict: indices, words
/// or points rendered as strings, plus a sentence saying what they show.
struct Witness {
  std::vector<std::string> items;
  std::string description;
};

/// Outcome of a class-membership or bound check.
///
/// A failing report always carries a witness and a holding report never
/// does; margins are nonnegative. The named constructors enforce both.
class PropertyReport {
 public:
  static PropertyReport holding(std::string property, double margin);
  static PropertyReport failing(std::string property, Witness witness, double margin = 0.0);
  static PropertyReport inconclusive(std::string property, double margin, std::string reason);

  const std::string& property() const noexcept { return property_; }
  Verdict verdict() const noexcept { return verdict_; }
  bool holds() const noexcept { return verdict_ == Verdict::holds; }
  bool fails() const noexcept { return verdict_ == Verdict::fails; }
  double margin() const noexcept { return margin_; }
  const std::optional<Witness>& witness() const noexcept { return witness_; }

  /// Exact margin as a rational string when the check ran in exact mode.
  const std::optional<std::string>& margin_exact() const noexcept { return margin_exact_; }
  PropertyReport& set_margin_exact(std::string value);

  /// Free-form extra measurements (counts, max residuals, ...).
  nlohmann::json& details() noexcept { return details_; }
  const nlohmann::json& details() const noexcept { return details_; }

  const std::string& note() const noexcept { return note_; }
  PropertyReport& set_note(std::string note);

  nlohmann::json to_json() const;

 private:
  PropertyReport(std::string property, Verdict verdict, double margin);

  std::string property_;
  Verdict verdict_;
  double margin_;
  std::optional<std::string> margin_exact_;
  std::optional<Witness> witness_;
  nlohmann::json details_ = nlohmann::json::object();
  std::string note_;
};

/// JSON-safe number: infinities become the strings "inf" / "-inf".
nlohmann::json json_number(double x);

/// Process exit status for a verdict: 0 holds, 2 fails, 3 inconclusive.
int exit_code(Verdict v);

}  // namespace hlab
