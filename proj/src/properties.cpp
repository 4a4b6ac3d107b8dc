// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/properties.hpp"

#include "mom/error.hpp"

#include <cassert>

namespace mom {

namespace {

constexpr std::uint8_t bit(Property p) { return static_cast<std::uint8_t>(p); }

constexpr std::uint8_t kLower = bit(Property::LowerTriangular);
constexpr std::uint8_t kUpper = bit(Property::UpperTriangular);
constexpr std::uint8_t kDiag = bit(Property::Diagonal);
constexpr std::uint8_t kSymm = bit(Property::Symmetric);

std::uint8_t close(std::uint8_t bits) {
  if ((bits & kLower) && (bits & kUpper))
    bits |= kDiag;
  if (bits & kDiag)
    bits |= kLower | kUpper | kSymm;
  return bits;
}

bool isClosed(std::uint8_t bits) { return close(bits) == bits; }

} // namespace

std::string_view surfaceName(Property p) {
  switch (p) {
  case Property::LowerTriangular:
    return "LowerTriangular";
  case Property::UpperTriangular:
    return "UpperTriangular";
  case Property::Diagonal:
    return "Diagonal";
  case Property::Symmetric:
    return "Symmetric";
  }
  return "";
}

std::string_view irName(Property p) {
  switch (p) {
  case Property::LowerTriangular:
    return "lowerTri";
  case Property::UpperTriangular:
    return "upperTri";
  case Property::Diagonal:
    return "diag";
  case Property::Symmetric:
    return "symm";
  }
  return "";
}

std::optional<Property> propertyFromSurfaceName(std::string_view name) {
  for (Property p : kAllProperties)
    if (surfaceName(p) == name)
      return p;
  return std::nullopt;
}

PropertySet::PropertySet(std::initializer_list<Property> props) {
  std::uint8_t bits = 0;
  for (Property p : props)
    bits |= bit(p);
  bits_ = close(bits);
}

PropertySet PropertySet::fromBits(std::uint8_t bits) {
  PropertySet s;
  s.bits_ = close(bits & (kLower | kUpper | kDiag | kSymm));
  return s;
}

std::vector<Property> PropertySet::generators() const {
  // Without Diagonal no closure rule can fire, so every member is needed.
  if (has(Property::Diagonal))
    return {Property::Diagonal};
  std::vector<Property> out;
  for (Property p : kAllProperties)
    if (has(p))
      out.push_back(p);
  return out;
}

std::string PropertySet::str() const {
  std::string out = "[";
  bool first = true;
  for (Property p : generators()) {
    if (!first)
      out += ",";
    out += irName(p);
    first = false;
  }
  out += "]";
  return out;
}

std::vector<PropertySet> allClosedPropertySets() {
  std::vector<PropertySet> out;
  for (std::uint8_t bits = 0; bits < 16; ++bits)
    if (isClosed(bits))
      out.push_back(PropertySet::fromBits(bits));
  return out;
}

std::string_view toString(StoredPattern p) {
  switch (p) {
  case StoredPattern::Full:
    return "full";
  case StoredPattern::LowerIncl:
    return "lowerIncl";
  case StoredPattern::UpperIncl:
    return "upperIncl";
  case StoredPattern::DiagOnly:
    return "diagOnly";
  }
  return "";
}

PropertySet canonicalize(std::span<const Property> declared, Dims dims) {
  std::uint8_t bits = 0;
  for (Property p : declared) {
    // Symmetric is included: a non-square symmetric matrix does not exist.
    if (!dims.square())
      throw CompileError(ErrorKind::NonSquareStructuralProperty,
                         std::string(surfaceName(p)) + " requires a square " +
                             "matrix, got " + std::to_string(dims.rows) + "x" +
                             std::to_string(dims.cols));
    bits |= bit(p);
  }
  return PropertySet::fromBits(bits);
}

PropertySet canonicalize(std::span<const std::string> declared, Dims dims) {
  std::vector<Property> props;
  props.reserve(declared.size());
  for (const std::string &name : declared) {
    auto p = propertyFromSurfaceName(name);
    if (!p)
      throw CompileError(ErrorKind::UnknownProperty,
                         "unknown property '" + name + "'");
    props.push_back(*p);
  }
  return canonicalize(props, dims);
}

PropertySet inferTranspose(PropertySet s) {
  std::uint8_t in = s.bits();
  std::uint8_t out = in & (kDiag | kSymm);
  if (in & kLower)
    out |= kUpper;
  if (in & kUpper)
    out |= kLower;
  PropertySet r = PropertySet::fromBits(out);
  assert(isClosed(r.bits()));
  return r;
}

PropertySet inferMul(PropertySet a, Dims dimsA, PropertySet b, Dims dimsB) {
  bool square = dimsA.square() && dimsB.square();
  std::uint8_t out = 0;
  if (square) {
    if (a.has(Property::LowerTriangular) && b.has(Property::LowerTriangular))
      out |= kLower;
    if (a.has(Property::UpperTriangular) && b.has(Property::UpperTriangular))
      out |= kUpper;
  }
  // Diagonal and Symmetric only arise through closure.
  return PropertySet::fromBits(out);
}

PropertySet inferAdd(PropertySet a, PropertySet b) {
  std::uint8_t out = a.bits() & b.bits();
  assert(isClosed(out));
  return PropertySet::fromBits(out);
}

StoredPattern storedPattern(PropertySet s) {
  if (s.has(Property::Diagonal))
    return StoredPattern::DiagOnly;
  if (s.has(Property::LowerTriangular))
    return StoredPattern::LowerIncl;
  if (s.has(Property::UpperTriangular))
    return StoredPattern::UpperIncl;
  return StoredPattern::Full;
}

} // namespace mom
