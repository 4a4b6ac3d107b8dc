// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Matrix structure properties and the inference rules over them.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mom {

enum class Property : std::uint8_t {
  LowerTriangular = 1 << 0,
  UpperTriangular = 1 << 1,
  Diagonal = 1 << 2,
  Symmetric = 1 << 3,
};

/// Declaration order; also the order used when printing.
inline constexpr Property kAllProperties[] = {
    Property::LowerTriangular, Property::UpperTriangular, Property::Diagonal,
    Property::Symmetric};

/// DSL spelling (`LowerTriangular`, ...).
std::string_view surfaceName(Property p);
/// IR spelling (`lowerTri`, `upperTri`, `diag`, `symm`).
std::string_view irName(Property p);
std::optional<Property> propertyFromSurfaceName(std::string_view name);

/// A set of properties that is always closed under
///   {Lower, Upper} => Diagonal   and   Diagonal => {Lower, Upper, Symmetric}.
/// Construction goes through closure, so no open set is observable.
class PropertySet {
public:
  PropertySet() = default;
  PropertySet(std::initializer_list<Property> props);

  static PropertySet fromBits(std::uint8_t bits);
  /// The closed set of a diagonal matrix.
  static PropertySet diagonal() { return {Property::Diagonal}; }

  bool has(Property p) const { return bits_ & static_cast<std::uint8_t>(p); }
  bool empty() const { return bits_ == 0; }
  std::uint8_t bits() const { return bits_; }

  /// Minimal generating set in fixed order, e.g. {diag} for the diagonal set.
  std::vector<Property> generators() const;
  /// `[lowerTri]`, `[diag]`, `[]`, ...
  std::string str() const;

  friend bool operator==(PropertySet, PropertySet) = default;

private:
  std::uint8_t bits_ = 0;
};

/// Every closed subset of the universe, for exhaustive testing.
std::vector<PropertySet> allClosedPropertySets();

/// Structural-nonzero region implied by a property set.
enum class StoredPattern : std::uint8_t { Full, LowerIncl, UpperIncl, DiagOnly };

inline constexpr StoredPattern kAllPatterns[] = {
    StoredPattern::Full, StoredPattern::LowerIncl, StoredPattern::UpperIncl,
    StoredPattern::DiagOnly};

std::string_view toString(StoredPattern p);

inline bool patternContains(StoredPattern p, std::int64_t i, std::int64_t j) {
  switch (p) {
  case StoredPattern::Full:
    return true;
  case StoredPattern::LowerIncl:
    return i >= j;
  case StoredPattern::UpperIncl:
    return i <= j;
  case StoredPattern::DiagOnly:
    return i == j;
  }
  return false;
}

struct Dims {
  std::int64_t rows = 0;
  std::int64_t cols = 0;

  bool square() const { return rows == cols; }
  friend bool operator==(const Dims &, const Dims &) = default;
};

/// Closes the declared properties. Throws NonSquareStructuralProperty when a
/// triangular or diagonal property is declared on a non-square shape.
PropertySet canonicalize(std::span<const Property> declared, Dims dims);
PropertySet canonicalize(std::span<const std::string> declared, Dims dims);

PropertySet inferTranspose(PropertySet s);
PropertySet inferMul(PropertySet a, Dims dimsA, PropertySet b, Dims dimsB);
PropertySet inferAdd(PropertySet a, PropertySet b);
StoredPattern storedPattern(PropertySet s);

} // namespace mom
