#include "hlab/error.hpp"

namespace hlab {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}

SpecError::SpecError(std::string where, const std::string& what)
    : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

}  // namespace hlab
