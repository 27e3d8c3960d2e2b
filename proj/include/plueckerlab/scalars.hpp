#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "plueckerlab/errors.hpp"

namespace plueckerlab {

// 2^31 - 1, the default modulus of the prime field.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

/// Deterministic random stream. Always passed explicitly; there is no global
/// generator. Integer draws are made by rejection from raw 64-bit outputs so
/// sequences are identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream `stream` of a base seed (per-sample seeding).
  static Rng derived(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

enum class FieldKind { Rational, Prime };

class FieldElement;

/// The base field: either Q or F_p for a prime p >= 2^31 - 1.
class Field {
 public:
  static Field rationals() { return Field(FieldKind::Rational, 0); }
  /// Throws MalformedInput unless p is a prime in [2^31 - 1, 2^63).
  static Field prime(std::uint64_t p = kDefaultPrime);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  std::uint64_t modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long value) const;
  FieldElement from_rational(const mpq_class& value) const;

  std::string tag() const { return is_rational() ? "q" : "fp"; }
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) = default;

 private:
  friend class FieldElement;
  Field(FieldKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  FieldKind kind_;
  std::uint64_t modulus_;
};

/// Exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in [0, p). Mixing elements of different
/// fields in one operation throws MalformedInput.
class FieldElement {
 public:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
    friend bool operator==(const Residue&, const Residue&) = default;
  };

  /// Rational zero.
  FieldElement() = default;
  explicit FieldElement(mpq_class value);
  FieldElement(std::uint64_t residue, std::uint64_t modulus);

  Field field() const;
  bool is_rational() const { return std::holds_alternative<mpq_class>(repr_); }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(repr_); }
  std::uint64_t residue() const { return std::get<Residue>(repr_).value; }
  /// Modulus of a residue; 0 for rationals.
  std::uint64_t modulus() const {
    return is_rational() ? 0 : std::get<Residue>(repr_).modulus;
  }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  /// Exact equality; elements of different fields compare unequal.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// "num/den" for rationals, decimal residue for F_p.
  std::string to_string() const;
  /// Inverse of to_string for the given field.
  static FieldElement parse(std::string_view text, const Field& field);

 private:
  void check_same_field(const FieldElement& other) const;

  std::variant<mpq_class, Residue> repr_;
};

/// Multiplies a residue pair modulo p without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p);

/// Uniform residue in F_p, or num/den with num in [-100, 100] and den in
/// [1, 10] over Q.
FieldElement sample_scalar(const Field& field, Rng& rng);

/// Dense row-major matrix over a single field.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, const Field& field);
  static DenseMatrix identity(std::size_t size, const Field& field);
  /// Builds from nested rows; every row must have the same length.
  static DenseMatrix from_rows(const std::vector<std::vector<FieldElement>>& rows,
                               const Field& field);
  static DenseMatrix random(std::size_t rows, std::size_t cols, const Field& field, Rng& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  FieldElement& at(std::size_t row, std::size_t col) { return entries_[row * cols_ + col]; }
  const FieldElement& at(std::size_t row, std::size_t col) const {
    return entries_[row * cols_ + col];
  }
  const std::vector<FieldElement>& entries() const { return entries_; }

  DenseMatrix transpose() const;
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

  /// Throws MalformedInput if any entry belongs to a field other than field().
  void check_uniform_field() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<FieldElement> entries_;
};

/// Exact rank: fraction-free (Bareiss) elimination over Q, Gaussian
/// elimination over F_p.
std::size_t mat_rank(const DenseMatrix& matrix);

/// Exact determinant of a square matrix, same elimination strategy as mat_rank.
FieldElement mat_det(const DenseMatrix& matrix);

/// Binomial coefficient C(n, k); 0 when k is out of range.
std::uint64_t binomial(int n, int k);

}  // namespace plueckerlab
