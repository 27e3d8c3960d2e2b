#include "plueckerlab/grassmann.hpp"

#include <stdexcept>
#include <vector>

namespace plueckerlab {

GrassPoint plucker_embed(const DenseMatrix& a) {
  a.check_uniform_field();
  const int r = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (r < 1 || r > n) throw PreconditionError("plucker_embed needs 1 <= rows <= cols");
  const Field& field = a.field();

  std::vector<ExteriorVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<FieldElement> coords(a.entries().begin() + static_cast<std::ptrdiff_t>(i * a.cols()),
                                     a.entries().begin() + static_cast<std::ptrdiff_t>((i + 1) * a.cols()));
    rows.push_back(ExteriorVector::from_coordinates(coords, field));
  }
  ExteriorVector w = wedge_product(rows, n, field);
  if (w.is_zero()) throw PreconditionError("plucker_embed: matrix is rank deficient");

  const FieldElement scale = w.coefficient(w.leading_mask()).inverse();
  DenseMatrix basis = a;
  for (std::size_t j = 0; j < basis.cols(); ++j) basis.at(0, j) *= scale;
  w *= scale;
  return GrassPoint{r, n, std::move(basis), std::move(w)};
}

GrassPoint random_grass_point(int r, int n, const Field& field, Rng& rng) {
  while (true) {
    auto a = DenseMatrix::random(static_cast<std::size_t>(r), static_cast<std::size_t>(n), field, rng);
    if (mat_rank(a) == static_cast<std::size_t>(r)) return plucker_embed(a);
  }
}

DenseMatrix mu_matrix(const ExteriorVector& w, int s) {
  const int d = w.ambient();
  const int r = w.degree();
  if (s < 0) throw PreconditionError("mu_matrix: s must be nonnegative");
  if (r + s > d) throw DimensionError("mu_matrix: degree r + s exceeds the ambient dimension");
  const auto sources = basis_masks(d, s);
  DenseMatrix m(binomial(d, r + s), sources.size(), w.field());
  for (std::size_t col = 0; col < sources.size(); ++col) {
    const Mask t = sources[col];
    for (const auto& [a, coeff] : w.terms()) {
      const int sign = merge_sign(a, t);
      if (sign == 0) continue;
      m.at(basis_rank(a | t), col) = sign > 0 ? coeff : -coeff;
    }
  }
  return m;
}

std::size_t mu_rank(const ExteriorVector& w, int s) {
  if (w.is_zero()) throw PreconditionError("mu_rank of the zero vector");
  if (s < 1) throw PreconditionError("mu_rank needs s >= 1");
  return mat_rank(mu_matrix(w, s));
}

bool is_decomposable(const ExteriorVector& w) {
  if (w.is_zero()) throw PreconditionError("decomposability of the zero vector is undefined");
  const int d = w.ambient();
  const int r = w.degree();
  if (d - 2 * r >= 1) return mu_rank(w, 1) == static_cast<std::size_t>(d - r);
  return plucker_relations_hold(w);
}

std::size_t grassmann_threshold(int r, int m) {
  if (m < 3) throw UnsupportedError("threshold is stated for m >= 3; use small_m_codim for m = 2");
  if (r < 1) throw PreconditionError("r must be positive");
  const std::uint64_t b = binomial((m - 1) * r, r);
  return static_cast<std::size_t>((r % 2 == 0 ? m : m - 1) * b);
}

std::size_t small_m_codim(int r, int m) {
  if (r < 1) throw PreconditionError("r must be positive");
  if (m != 2) throw UnsupportedError("the small-m codimension is defined for m = 2 only");
  return static_cast<std::size_t>(m - 1);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InGrassmannian:
      return "InGrassmannian";
    case Verdict::FailsMultiplicity:
      return "FailsMultiplicity";
    case Verdict::FailsTangentBound:
      return "FailsTangentBound";
  }
  return "?";
}

ClassifierVerdict classify_grassmannian(const ExteriorVector& w, int r, int m) {
  if (m < 3) throw UnsupportedError("Grassmannian reconstruction requires m >= 3");
  if (w.degree() != r || w.ambient() != r * m) {
    throw DimensionError("classifier input must have degree r in ambient rm");
  }
  if (w.is_zero()) throw PreconditionError("cannot classify the zero vector");
  const std::size_t threshold = grassmann_threshold(r, m);
  // For odd r, w ^ w = 0 always, so this branch only triggers for even r.
  if (diagonal_multiplicity(w) < m - 1) {
    return {Verdict::FailsMultiplicity, std::nullopt, threshold};
  }
  const std::size_t codim = tangent_codim(PointTuple::diagonal(w, m), m - 1);
  if (codim == threshold) return {Verdict::InGrassmannian, codim, threshold};
  if (codim < threshold) {
    throw std::logic_error("tangent codimension " + std::to_string(codim) +
                           " below the lower bound " + std::to_string(threshold));
  }
  return {Verdict::FailsTangentBound, codim, threshold};
}

FieldElement ev_m_det(std::span<const GrassPoint> points) {
  if (points.empty()) throw PreconditionError("ev_m_det needs at least one point");
  const int r = points.front().r;
  const int n = points.front().n;
  const int m = static_cast<int>(points.size());
  if (r * m != n) throw DimensionError("ev_m_det needs m points of dimension r in ambient rm");
  const Field field = points.front().basis.field();
  DenseMatrix stacked(static_cast<std::size_t>(n), static_cast<std::size_t>(n), field);
  std::size_t row = 0;
  for (const auto& p : points) {
    if (p.r != r || p.n != n) throw DimensionError("ev_m_det: points of different shape");
    if (!(p.basis.field() == field)) throw MalformedInput("ev_m_det: points over different fields");
    for (std::size_t i = 0; i < p.basis.rows(); ++i, ++row) {
      for (std::size_t j = 0; j < p.basis.cols(); ++j) stacked.at(row, j) = p.basis.at(i, j);
    }
  }
  return mat_det(stacked);
}

}  // namespace plueckerlab
