#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "plueckerlab/exterior.hpp"
#include "plueckerlab/scalars.hpp"

namespace plueckerlab {

/// Point of P^1 with canonical representative (x, 1), or (1, 0) at infinity.
class P1Point {
 public:
  P1Point(FieldElement u, FieldElement v);
  static P1Point affine(const FieldElement& x);
  static P1Point infinity(const Field& field);

  const FieldElement& u() const { return u_; }
  const FieldElement& v() const { return v_; }

  friend bool operator==(const P1Point&, const P1Point&) = default;

 private:
  FieldElement u_;
  FieldElement v_;
};

/// Homogeneous form of the given degree in (u, v); coeffs[a] multiplies
/// u^a v^(degree - a).
struct BinaryForm {
  int degree;
  std::vector<FieldElement> coeffs;

  static BinaryForm zero(int degree, const Field& field);
  static BinaryForm monomial(int degree, int a, const Field& field);
  FieldElement eval(const P1Point& x) const;
  bool is_zero() const;

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  BinaryForm& operator+=(const BinaryForm& other);
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

/// A global section of O(d_1) + ... + O(d_r): one form per summand.
using Section = std::vector<BinaryForm>;

/// A pair (E, S) on P^1 with E = O(d_1) + ... + O(d_r), sum d_i = r(m-1),
/// and S an rm-dimensional space of sections given by a basis.
struct BundlePairP1 {
  int r;
  int m;
  std::vector<int> splitting;
  std::vector<Section> sections;
  bool complete;
  Field field;

  bool is_balanced() const;
  /// Degree of det E, r(m - 1).
  int det_degree() const { return r * (m - 1); }
  int section_count() const { return static_cast<int>(sections.size()); }
};

/// Complete pair S = H^0(E) with the monomial basis u^a v^(d_i - a) in each
/// summand. Rejects wrong total degree, negative summands and m < 2.
BundlePairP1 make_pair(const std::vector<int>& splitting, int m, const Field& field);

/// Same bundle with section basis G * (old basis); G must be invertible.
BundlePairP1 change_basis(const BundlePairP1& pair, const DenseMatrix& g);

/// rm x rm: row per section, column block of width r per point.
DenseMatrix evaluation_matrix(const BundlePairP1& pair, std::span<const P1Point> points);

/// Determinant of the evaluation matrix at the fixed representatives.
FieldElement divisor_value(const BundlePairP1& pair, std::span<const P1Point> points);

/// m random affine points; pairwise distinct when `distinct` is set.
std::vector<P1Point> sample_points(const Field& field, int count, Rng& rng, bool distinct);

/// prod_{i<j} (u_i v_j - u_j v_i)^power.
FieldElement diagonal_product(std::span<const P1Point> points, int power);

/// True iff some sampled point tuple has nonzero divisor value.
bool has_plucker_form(const BundlePairP1& pair, int trials, std::uint64_t seed);

/// Upper bound on the chance that has_plucker_form misses an existing form:
/// (total degree / p)^trials over F_p; nullopt over Q.
std::optional<double> plucker_form_failure_bound(const BundlePairP1& pair, int trials);

struct DivisorReport {
  FieldElement constant_c;
  int trials;
  bool all_matched;
  bool identically_zero;
  /// Balanced pairs only: det = c' * (det of the line-bundle pair)^r.
  std::optional<FieldElement> power_constant;
  std::optional<bool> power_matched;
};

/// Fits c in det = c * prod_{i<j} (u_i v_j - u_j v_i)^r on one generic
/// sample, then checks the identity exactly on `trials` further samples.
DivisorReport diagonal_factor_check(const BundlePairP1& pair, int trials, std::uint64_t seed);

nlohmann::json to_json(const DivisorReport& report);

struct SymbolicCheck {
  bool matched;
  FieldElement constant_c;
  std::size_t terms;  // monomials in the expanded determinant
};

/// Expands the evaluation determinant as a polynomial in (u_i, v_i) and
/// compares it with c * prod (u_i v_j - u_j v_i)^r coefficientwise.
/// Limited to rm <= 8.
SymbolicCheck symbolic_divisor_check(const BundlePairP1& pair);

/// C(rm, r) columns over the strictly increasing wedges of the section
/// basis, r(m-1) + 1 rows over the monomials of degree r(m-1).
DenseMatrix det_map_matrix(const BundlePairP1& pair);
std::size_t det_map_rank(const BundlePairP1& pair);

/// Pluecker vector of the r x rm matrix of section values at x, as a
/// degree-r vector indexed by r-subsets of the section basis.
ExteriorVector classify_point(const BundlePairP1& pair, const P1Point& x);

/// Coefficients of evaluation at x on the monomials of degree r(m-1).
std::vector<FieldElement> evaluation_functional(const BundlePairP1& pair, const P1Point& x);

/// Transpose of det_map_matrix applied to a functional on the forms of
/// degree r(m-1). Throws PreconditionError at indeterminacy points.
ExteriorVector lambda_image(const BundlePairP1& pair, std::span<const FieldElement> functional);

/// Rank of the classify_point vectors at `samples` random points.
std::size_t span_dimension(const BundlePairP1& pair, int samples, std::uint64_t seed);

/// Whether evaluation at the two distinct points x, y has rank 2r.
bool two_point_surjectivity(const BundlePairP1& pair, const P1Point& x, const P1Point& y);

/// {"r", "m", "splitting", "field", ["prime"]}
nlohmann::json pair_description(const BundlePairP1& pair);
BundlePairP1 pair_from_description(const nlohmann::json& j);

}  // namespace plueckerlab
