#include "plueckerlab/plucker_form.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace plueckerlab {

namespace {

ExteriorVector unit(int n, const Field& field) {
  ExteriorVector one(n, 0, field);
  one.add_term(0, field.one());
  return one;
}

void check_slot(const ExteriorVector& v, int r, int n, const Field& field) {
  if (v.degree() != r || v.ambient() != n) {
    throw DimensionError("slot must have degree " + std::to_string(r) + " in ambient " +
                         std::to_string(n));
  }
  if (!(v.field() == field)) throw MalformedInput("slots over different fields");
}

}  // namespace

PointTuple::PointTuple(int r, int m, std::vector<ExteriorVector> slots) : r_(r), m_(m) {
  if (r < 1 || m < 1) throw PreconditionError("point tuple needs r, m >= 1");
  if (r * m > kMaxAmbient) throw DimensionError("rm exceeds 64");
  if (slots.size() != static_cast<std::size_t>(m)) {
    throw MalformedInput("expected " + std::to_string(m) + " slots");
  }
  const Field field = slots.front().field();
  slots_.reserve(slots.size());
  for (auto& s : slots) {
    check_slot(s, r, r * m, field);
    if (s.is_zero()) throw MalformedInput("point tuple slot is zero");
    slots_.push_back(s.normalized());
  }
}

PointTuple PointTuple::diagonal(const ExteriorVector& w, int m) {
  return PointTuple(w.degree(), m, std::vector<ExteriorVector>(static_cast<std::size_t>(m), w));
}

PointTuple PointTuple::swapped(int i, int j) const {
  auto slots = slots_;
  std::swap(slots.at(static_cast<std::size_t>(i)), slots.at(static_cast<std::size_t>(j)));
  return PointTuple(r_, m_, std::move(slots));
}

ExteriorVector wedge_product(std::span<const ExteriorVector> factors, int n, const Field& field) {
  ExteriorVector acc = unit(n, field);
  for (const auto& f : factors) acc = wedge(acc, f);
  return acc;
}

FieldElement top_coefficient(std::span<const ExteriorVector> factors) {
  if (factors.empty()) throw PreconditionError("top_coefficient of an empty product");
  const int n = factors.front().ambient();
  int total = 0;
  for (const auto& f : factors) total += f.degree();
  if (total != n) throw DimensionError("factor degrees do not sum to the ambient dimension");
  const auto product = wedge_product(factors, n, factors.front().field());
  return product.coefficient(n == 64 ? ~Mask{0} : (Mask{1} << n) - 1);
}

FieldElement eval_form(const PointTuple& p) { return top_coefficient(p.slots()); }

std::vector<ShuffleTerm> expand_form(int r, int m) {
  if (r < 1 || m < 1) throw PreconditionError("expand_form needs r, m >= 1");
  const int n = r * m;
  if (n > kMaxAmbient) throw DimensionError("rm exceeds 64");
  std::vector<ShuffleTerm> out;
  std::vector<MultiIndex> blocks;
  const auto candidates = basis_masks(n, r);
  // Depth-first over slots; `used` is the union of earlier blocks and `sign`
  // the product of merge signs folding each new block onto that union.
  auto recurse = [&](auto&& self, Mask used, int sign) -> void {
    if (static_cast<int>(blocks.size()) == m) {
      out.push_back({blocks, sign});
      return;
    }
    for (Mask b : candidates) {
      if (b & used) continue;
      blocks.emplace_back(b, n);
      self(self, used | b, sign * merge_sign(used, b));
      blocks.pop_back();
    }
  };
  recurse(recurse, 0, 1);
  return out;
}

FieldElement evaluate_expansion(std::span<const ShuffleTerm> terms,
                                std::span<const ExteriorVector> slots) {
  if (slots.empty()) throw PreconditionError("no slots");
  const Field& field = slots.front().field();
  FieldElement total = field.zero();
  for (const auto& term : terms) {
    if (term.blocks.size() != slots.size()) throw DimensionError("term/slot count mismatch");
    FieldElement product = field.one();
    for (std::size_t s = 0; s < slots.size() && !product.is_zero(); ++s) {
      product *= slots[s].coefficient(term.blocks[s].mask());
    }
    if (term.sign > 0) {
      total += product;
    } else {
      total -= product;
    }
  }
  return total;
}

nlohmann::json to_json(std::span<const ShuffleTerm> terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : t.blocks) blocks.push_back(b.indices());
    out.push_back({{"blocks", std::move(blocks)}, {"sign", t.sign}});
  }
  return out;
}

Mask block_positions(Mask slot_mask, int r) {
  Mask out = 0;
  const Mask block = (Mask{1} << r) - 1;
  for (Mask m = slot_mask; m != 0; m &= m - 1) {
    out |= block << (std::countr_zero(m) * r);
  }
  return out;
}

FieldElement polar(int k, const PointTuple& w, std::span<const ExteriorVector> t) {
  const int r = w.r();
  const int m = w.m();
  const int n = w.ambient();
  const Field& field = w.field();
  if (k < 0 || k > m) throw PreconditionError("polar order must lie in [0, m]");
  if (t.size() != static_cast<std::size_t>(m)) throw DimensionError("direction needs m slots");
  for (const auto& ti : t) check_slot(ti, r, n, field);

  const Mask all = (Mask{1} << m) - 1;
  const Mask top = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  FieldElement total = field.zero();
  for (Mask subset : basis_masks(m, k)) {
    std::vector<ExteriorVector> fixed, moving;
    for (int s = 0; s < m; ++s) {
      if (subset & (Mask{1} << s)) {
        moving.push_back(t[static_cast<std::size_t>(s)]);
      } else {
        fixed.push_back(w.slot(s));
      }
    }
    const auto block = wedge(wedge_product(fixed, n, field), wedge_product(moving, n, field));
    const FieldElement value = block.coefficient(top);
    if (value.is_zero()) continue;
    const int sign = merge_sign(block_positions(all & ~subset, r), block_positions(subset, r));
    if (sign > 0) {
      total += value;
    } else {
      total -= value;
    }
  }
  return total;
}

namespace {

// Partial wedges w_S, built on demand from w_{S - max(S)} ^ w_{max(S)}.
class PartialWedges {
 public:
  explicit PartialWedges(const PointTuple& p) : p_(p) {}

  const ExteriorVector& get(Mask subset) {
    auto& slot = cache_[subset];
    if (!slot) {
      if (subset == 0) {
        slot = unit(p_.ambient(), p_.field());
      } else {
        const int last = 63 - std::countl_zero(subset);
        const Mask rest = subset & ~(Mask{1} << last);
        slot = wedge(get(rest), p_.slot(last));
      }
    }
    return *slot;
  }

 private:
  const PointTuple& p_;
  std::map<Mask, std::optional<ExteriorVector>> cache_;
};

}  // namespace

int multiplicity_at(const PointTuple& p) {
  const int m = p.m();
  PartialWedges partial(p);
  // Vanishing of all partial wedges of size j forces vanishing for every
  // larger size, so the first such j decides.
  for (int size = 2; size <= m; ++size) {
    bool all_zero = true;
    for (Mask subset : basis_masks(m, size)) {
      if (!partial.get(subset).is_zero()) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) return m - size + 1;
  }
  return 0;
}

TangentSystem build_tangent_system(const PointTuple& p, int k) {
  const int r = p.r();
  const int m = p.m();
  const int n = p.ambient();
  const Field& field = p.field();
  if (k < 0 || k > m) throw PreconditionError("singularity order must lie in [0, m]");
  if (multiplicity_at(p) < k) {
    throw PreconditionError("point does not have multiplicity >= " + std::to_string(k));
  }
  const int subset_size = m - k + 1;
  const auto subsets = subset_size <= m ? basis_masks(m, subset_size) : std::vector<Mask>{};
  const std::size_t row_block = binomial(n, r * subset_size);
  const std::size_t col_block = binomial(n, r);
  DenseMatrix matrix(subsets.size() * row_block, static_cast<std::size_t>(m) * col_block, field);

  PartialWedges partial(p);
  const auto directions = basis_masks(n, r);
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    const Mask subset = subsets[si];
    for (Mask bits = subset; bits != 0; bits &= bits - 1) {
      const int s = std::countr_zero(bits);
      const Mask others = subset & ~(Mask{1} << s);
      const ExteriorVector& rest = partial.get(others);
      // The slot-ordered product with t_s in place s equals w_{S-s} ^ t_s up
      // to the sign of moving block s past the later blocks of S.
      const int shift = merge_sign(block_positions(others, r), block_positions(Mask{1} << s, r));
      for (Mask j : directions) {
        const std::size_t col = static_cast<std::size_t>(s) * col_block + basis_rank(j);
        for (const auto& [a, coeff] : rest.terms()) {
          const int sign = merge_sign(a, j) * shift;
          if (sign == 0) continue;
          const std::size_t row = si * row_block + basis_rank(a | j);
          if (sign > 0) {
            matrix.at(row, col) += coeff;
          } else {
            matrix.at(row, col) -= coeff;
          }
        }
      }
    }
  }
  return TangentSystem{k, p, subsets, std::move(matrix)};
}

std::size_t tangent_codim(const PointTuple& p, int k) {
  return mat_rank(build_tangent_system(p, k).matrix);
}

int diagonal_multiplicity(const ExteriorVector& w) {
  const int r = w.degree();
  if (r < 1 || w.ambient() % r != 0) {
    throw DimensionError("diagonal_multiplicity needs ambient dimension divisible by the degree");
  }
  if (w.is_zero()) throw PreconditionError("diagonal_multiplicity of the zero vector");
  const int m = w.ambient() / r;
  ExteriorVector power = w;
  for (int j = 2; j <= m; ++j) {
    power = wedge(power, w);
    if (power.is_zero()) return m - j + 1;
  }
  return 0;
}

}  // namespace plueckerlab
