#pragma once

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "plueckerlab/exterior.hpp"
#include "plueckerlab/scalars.hpp"

namespace plueckerlab {

/// A point of P(wedge^r V)^m with dim V = rm: m nonzero degree-r vectors,
/// each scaled so its lex-smallest nonzero coordinate is 1.
class PointTuple {
 public:
  PointTuple(int r, int m, std::vector<ExteriorVector> slots);
  /// (w, ..., w), m copies.
  static PointTuple diagonal(const ExteriorVector& w, int m);

  int r() const { return r_; }
  int m() const { return m_; }
  int ambient() const { return r_ * m_; }
  const Field& field() const { return slots_.front().field(); }
  const std::vector<ExteriorVector>& slots() const { return slots_; }
  const ExteriorVector& slot(int i) const { return slots_.at(static_cast<std::size_t>(i)); }

  /// Same tuple with slots i and j exchanged (0-based).
  PointTuple swapped(int i, int j) const;

 private:
  int r_;
  int m_;
  std::vector<ExteriorVector> slots_;
};

/// Wedge of the factors in order. An empty list gives the degree-0 unit of
/// the given ambient dimension.
ExteriorVector wedge_product(std::span<const ExteriorVector> factors, int n, const Field& field);

/// Coefficient of e_1 ^ ... ^ e_n in the wedge of factors whose degrees sum
/// to n. Used for raw (unnormalized) representatives.
FieldElement top_coefficient(std::span<const ExteriorVector> factors);

/// The multilinear form: coefficient of e_{1..rm} in w_1 ^ ... ^ w_m.
FieldElement eval_form(const PointTuple& p);

struct ShuffleTerm {
  std::vector<MultiIndex> blocks;  // blocks[s] indexes the coordinate used in slot s
  int sign;
};

/// Every ordered partition of {1..rm} into m blocks of size r, with the sign
/// of the corresponding shuffle. (rm)! / (r!)^m entries.
std::vector<ShuffleTerm> expand_form(int r, int m);

/// Sum over terms of sign * prod_s p^{(s)}_{blocks[s]}.
FieldElement evaluate_expansion(std::span<const ShuffleTerm> terms,
                                std::span<const ExteriorVector> slots);

/// [{"blocks": [[...], ...], "sign": +-1}, ...]
nlohmann::json to_json(std::span<const ShuffleTerm> terms);

/// Degree-r positions occupied by the slots in slot_mask: slot s (0-based)
/// owns positions s*r+1 .. (s+1)*r.
Mask block_positions(Mask slot_mask, int r);

/// Coefficient of eps^k in eval_form applied slotwise to w_i + eps * t_i.
/// Computed as a sum over k-subsets S of the slots of the reordered block
/// product w_{M-S} ^ t_S, with the reordering sign taken from merge_sign on
/// block positions.
FieldElement polar(int k, const PointTuple& w, std::span<const ExteriorVector> t);

/// Largest k in [0, m-1] such that every partial wedge w_S with |S| = m-k+1
/// vanishes.
int multiplicity_at(const PointTuple& p);

/// Linear conditions on t = (t_1, ..., t_m) for tangency to the locus of
/// points of multiplicity >= k at base. Row block per slot subset S with
/// |S| = m-k+1 (listed in subsets), one row per basis element of degree
/// r|S|; column block per slot, one column per degree-r basis element.
struct TangentSystem {
  int k;
  PointTuple base;
  std::vector<Mask> subsets;
  DenseMatrix matrix;
};

/// Throws PreconditionError if multiplicity_at(p) < k.
TangentSystem build_tangent_system(const PointTuple& p, int k);

/// Rank of the tangent system: codimension of the tangent space preimage in
/// (wedge^r V)^m.
std::size_t tangent_codim(const PointTuple& p, int k);

/// multiplicity_at of (w, ..., w) with m = n / r, from powers of w alone.
int diagonal_multiplicity(const ExteriorVector& w);

}  // namespace plueckerlab
