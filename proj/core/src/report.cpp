#include "hlab/report.hpp"

#include <cmath>

#include "hlab/error.hpp"

namespace hlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

PropertyReport::PropertyReport(std::string property, Verdict verdict, double margin)
    : property_(std::move(property)), verdict_(verdict), margin_(margin) {
  if (!(margin >= 0.0)) throw InvalidArgument("report margin must be >= 0");
}

PropertyReport PropertyReport::holding(std::string property, double margin) {
  return PropertyReport(std::move(property), Verdict::holds, margin);
}

PropertyReport PropertyReport::failing(std::string property, Witness witness, double margin) {
  if (witness.items.empty()) throw InvalidArgument("a failing report needs a witness");
  PropertyReport r(std::move(property), Verdict::fails, margin);
  r.witness_ = std::move(witness);
  return r;
}

PropertyReport PropertyReport::inconclusive(std::string property, double margin, std::string reason) {
  PropertyReport r(std::move(property), Verdict::inconclusive, margin);
  r.note_ = std::move(reason);
  return r;
}

PropertyReport& PropertyReport::set_margin_exact(std::string value) {
  margin_exact_ = std::move(value);
  return *this;
}

PropertyReport& PropertyReport::set_note(std::string note) {
  note_ = std::move(note);
  return *this;
}

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j;
  j["property"] = property_;
  j["verdict"] = to_string(verdict_);
  j["margin"] = json_number(margin_);
  if (margin_exact_) j["margin_exact"] = *margin_exact_;
  if (witness_) j["witness"] = {{"items", witness_->items}, {"description", witness_->description}};
  if (!details_.empty()) j["details"] = details_;
  if (!note_.empty()) j["note"] = note_;
  return j;
}

nlohmann::json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return 0;
    case Verdict::fails: return 2;
    case Verdict::inconclusive: return 3;
  }
  return 1;
}

}  // namespace hlab
