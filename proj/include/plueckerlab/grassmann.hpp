#pragma once

#include <optional>
#include <span>
#include <string>

#include "plueckerlab/exterior.hpp"
#include "plueckerlab/plucker_form.hpp"
#include "plueckerlab/scalars.hpp"

namespace plueckerlab {

/// An r-dimensional subspace of an n-dimensional space, kept together with
/// a spanning matrix and its Pluecker vector. The first row of the basis is
/// rescaled so the Pluecker vector is normalized and still equals the wedge
/// of the rows exactly.
struct GrassPoint {
  int r;
  int n;
  DenseMatrix basis;
  ExteriorVector plucker;
};

/// Throws PreconditionError if A does not have full row rank.
GrassPoint plucker_embed(const DenseMatrix& a);

/// Full-rank r x n matrix with sample_scalar entries, embedded.
GrassPoint random_grass_point(int r, int n, const Field& field, Rng& rng);

/// Matrix of t -> w ^ t from wedge^s to wedge^{r+s}: C(d, r+s) rows,
/// C(d, s) columns.
DenseMatrix mu_matrix(const ExteriorVector& w, int s);
std::size_t mu_rank(const ExteriorVector& w, int s);

/// Rank test: mu_rank(w, 1) == d - r when d - 2r >= 1, otherwise the
/// contraction relations.
bool is_decomposable(const ExteriorVector& w);

/// m * C((m-1)r, r) for even r, (m-1) * C((m-1)r, r) for odd r. Requires m >= 3.
std::size_t grassmann_threshold(int r, int m);

/// The small-m branch: codimension m - 1, defined for m = 2 only.
std::size_t small_m_codim(int r, int m);

enum class Verdict { InGrassmannian, FailsMultiplicity, FailsTangentBound };

std::string to_string(Verdict v);

struct ClassifierVerdict {
  Verdict tag;
  std::optional<std::size_t> observed_codim;  // absent iff FailsMultiplicity
  std::size_t threshold;
};

/// Grassmannian membership of [w] from the multiplicity of the diagonal
/// point (w, ..., w) and the codimension of the tangent space to the locus
/// of multiplicity m - 1 there. Requires m >= 3 and ambient dimension rm.
ClassifierVerdict classify_grassmannian(const ExteriorVector& w, int r, int m);

/// Determinant of the rm x rm matrix stacking the basis matrices of m points.
FieldElement ev_m_det(std::span<const GrassPoint> points);

}  // namespace plueckerlab
