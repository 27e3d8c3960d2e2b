#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "plueckerlab/scalars.hpp"

namespace plueckerlab {

using Mask = std::uint64_t;

inline constexpr int kMaxAmbient = 64;

/// Strictly increasing subset of {1, ..., n}, bit i-1 standing for index i.
/// Labels the basis vector e_I of the exterior algebra.
class MultiIndex {
 public:
  MultiIndex(Mask mask, int n);
  /// 1-based indices in any order; duplicates are rejected.
  static MultiIndex of(std::initializer_list<int> indices, int n);
  static MultiIndex of(std::span<const int> indices, int n);
  /// The interval [first, last] (1-based, inclusive).
  static MultiIndex interval(int first, int last, int n);

  Mask mask() const { return mask_; }
  int ambient() const { return n_; }
  int degree() const { return std::popcount(mask_); }
  std::vector<int> indices() const;

  bool intersects(const MultiIndex& other) const { return (mask_ & other.mask_) != 0; }

  /// Lexicographic order of the sorted index lists (sets of equal size).
  friend bool lex_less(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  Mask mask_;
  int n_;
};

/// Sign of e_I ^ e_J = sign * e_{I u J}: the parity of the inversions of the
/// concatenated sequence (I, J). Zero if I and J meet.
int merge_sign(Mask i, Mask j);
int merge_sign(const MultiIndex& i, const MultiIndex& j);

/// All masks of the given popcount inside the first n bits, in increasing
/// numeric order.
std::vector<Mask> basis_masks(int n, int degree);

/// Position of a mask inside basis_masks(n, popcount(mask)).
std::size_t basis_rank(Mask mask);

/// Homogeneous element of the degree-k exterior power of an n-dimensional
/// space. Terms are kept sorted by mask and never hold a zero coefficient.
class ExteriorVector {
 public:
  using Terms = std::map<Mask, FieldElement>;

  ExteriorVector(int n, int degree, const Field& field);
  static ExteriorVector basis(const MultiIndex& index, const Field& field);
  /// Degree-1 vector from n coordinates.
  static ExteriorVector from_coordinates(std::span<const FieldElement> coords, const Field& field);

  int ambient() const { return n_; }
  int degree() const { return degree_; }
  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldElement coefficient(Mask mask) const;
  /// Adds value to the coefficient of mask, dropping the term if it cancels.
  void add_term(Mask mask, const FieldElement& value);

  /// Lex-smallest mask with a nonzero coefficient. Throws on the zero vector.
  Mask leading_mask() const;
  /// Scales so the lex-smallest nonzero coefficient becomes 1.
  ExteriorVector normalized() const;

  ExteriorVector& operator+=(const ExteriorVector& other);
  ExteriorVector& operator-=(const ExteriorVector& other);
  ExteriorVector& operator*=(const FieldElement& scalar);
  friend ExteriorVector operator+(ExteriorVector a, const ExteriorVector& b) { return a += b; }
  friend ExteriorVector operator-(ExteriorVector a, const ExteriorVector& b) { return a -= b; }
  friend ExteriorVector operator*(const FieldElement& s, ExteriorVector v) { return v *= s; }

  friend bool operator==(const ExteriorVector& a, const ExteriorVector& b);

  /// Equal up to a nonzero scalar.
  bool projectively_equal(const ExteriorVector& other) const;

 private:
  void check_compatible(const ExteriorVector& other) const;

  int n_;
  int degree_;
  Field field_;
  Terms terms_;
};

/// Bilinear wedge product. Throws DimensionError if the ambient dimensions
/// differ or the degrees add up past n.
ExteriorVector wedge(const ExteriorVector& u, const ExteriorVector& v);

/// Interior product with the dual basis covector of phi, normalized so that
/// e_phi ^ contract(phi, e_I) = e_I whenever phi is contained in I.
ExteriorVector contract(const MultiIndex& phi, const ExteriorVector& w);

/// Classical quadratic relations: contract(phi, w) ^ w = 0 for every phi of
/// degree r - 1. Holds iff w is decomposable. Throws on the zero vector.
bool plucker_relations_hold(const ExteriorVector& w);

/// All C(n, degree) coefficients drawn with sample_scalar; redrawn if the
/// result is zero.
ExteriorVector random_exterior(int n, int degree, const Field& field, Rng& rng);

/// {"n", "degree", "field", ["prime"], "terms": [[[indices...], "value"], ...]}
nlohmann::json to_json(const ExteriorVector& v);
ExteriorVector exterior_from_json(const nlohmann::json& j);

}  // namespace plueckerlab
