#include "plueckerlab/exterior.hpp"

#include <algorithm>
#include <string>

namespace plueckerlab {

namespace {

Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

void check_ambient(int n) {
  if (n < 0 || n > kMaxAmbient) {
    throw DimensionError("ambient dimension must lie in [0, 64], got " + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(Mask mask, int n) : mask_(mask), n_(n) {
  check_ambient(n);
  if ((mask & ~low_bits(n)) != 0) throw DimensionError("multi-index exceeds ambient dimension");
}

MultiIndex MultiIndex::of(std::initializer_list<int> indices, int n) {
  return of(std::span<const int>(indices.begin(), indices.size()), n);
}

MultiIndex MultiIndex::of(std::span<const int> indices, int n) {
  check_ambient(n);
  Mask mask = 0;
  for (int i : indices) {
    if (i < 1 || i > n) throw DimensionError("index out of range: " + std::to_string(i));
    const Mask bit = Mask{1} << (i - 1);
    if (mask & bit) throw MalformedInput("repeated index: " + std::to_string(i));
    mask |= bit;
  }
  return MultiIndex(mask, n);
}

MultiIndex MultiIndex::interval(int first, int last, int n) {
  Mask mask = 0;
  for (int i = first; i <= last; ++i) mask |= Mask{1} << (i - 1);
  return MultiIndex(mask, n);
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  const Mask diff = a.mask_ ^ b.mask_;
  if (diff == 0) return false;
  // The smallest index where the sets differ decides.
  return (a.mask_ & (diff & (~diff + 1))) != 0;
}

int merge_sign(Mask i, Mask j) {
  if (i & j) return 0;
  int inversions = 0;
  for (Mask m = i; m != 0; m &= m - 1) {
    const Mask below = (m & (~m + 1)) - 1;
    inversions += std::popcount(j & below);
  }
  return (inversions & 1) ? -1 : 1;
}

int merge_sign(const MultiIndex& i, const MultiIndex& j) {
  if (i.ambient() != j.ambient()) throw DimensionError("merge_sign across ambient dimensions");
  return merge_sign(i.mask(), j.mask());
}

std::vector<Mask> basis_masks(int n, int degree) {
  check_ambient(n);
  std::vector<Mask> out;
  if (degree < 0 || degree > n) return out;
  if (degree == 0) return {Mask{0}};
  const Mask limit = low_bits(n);
  Mask m = low_bits(degree);
  while (true) {
    out.push_back(m);
    if (m == (limit & ~low_bits(n - degree))) break;
    // Gosper's hack: next integer with the same popcount.
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

std::size_t basis_rank(Mask mask) {
  std::size_t rank = 0;
  int i = 1;
  for (Mask m = mask; m != 0; m &= m - 1, ++i) {
    rank += binomial(std::countr_zero(m), i);
  }
  return rank;
}

// ---------------------------------------------------------------------------
// ExteriorVector

ExteriorVector::ExteriorVector(int n, int degree, const Field& field)
    : n_(n), degree_(degree), field_(field) {
  check_ambient(n);
  if (degree < 0 || degree > n) {
    throw DimensionError("degree " + std::to_string(degree) + " outside [0, " + std::to_string(n) +
                         "]");
  }
}

ExteriorVector ExteriorVector::basis(const MultiIndex& index, const Field& field) {
  ExteriorVector v(index.ambient(), index.degree(), field);
  v.terms_.emplace(index.mask(), field.one());
  return v;
}

ExteriorVector ExteriorVector::from_coordinates(std::span<const FieldElement> coords,
                                                const Field& field) {
  ExteriorVector v(static_cast<int>(coords.size()), 1, field);
  for (std::size_t i = 0; i < coords.size(); ++i) v.add_term(Mask{1} << i, coords[i]);
  return v;
}

FieldElement ExteriorVector::coefficient(Mask mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? field_.zero() : it->second;
}

void ExteriorVector::add_term(Mask mask, const FieldElement& value) {
  if (std::popcount(mask) != degree_ || (mask & ~low_bits(n_)) != 0) {
    throw DimensionError("term does not match degree/ambient dimension");
  }
  if (value.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Mask ExteriorVector::leading_mask() const {
  if (terms_.empty()) throw PreconditionError("zero vector has no leading coordinate");
  Mask best = terms_.begin()->first;
  for (const auto& [mask, _] : terms_) {
    if (lex_less(MultiIndex(mask, n_), MultiIndex(best, n_))) best = mask;
  }
  return best;
}

ExteriorVector ExteriorVector::normalized() const {
  const FieldElement lead = coefficient(leading_mask());
  ExteriorVector out = *this;
  out *= lead.inverse();
  return out;
}

void ExteriorVector::check_compatible(const ExteriorVector& other) const {
  if (n_ != other.n_ || degree_ != other.degree_) {
    throw DimensionError("exterior vectors of different shape");
  }
  if (!(field_ == other.field_)) throw MalformedInput("exterior vectors over different fields");
}

ExteriorVector& ExteriorVector::operator+=(const ExteriorVector& other) {
  check_compatible(other);
  for (const auto& [mask, value] : other.terms_) add_term(mask, value);
  return *this;
}

ExteriorVector& ExteriorVector::operator-=(const ExteriorVector& other) {
  check_compatible(other);
  for (const auto& [mask, value] : other.terms_) add_term(mask, -value);
  return *this;
}

ExteriorVector& ExteriorVector::operator*=(const FieldElement& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, value] : terms_) value *= scalar;
  return *this;
}

bool operator==(const ExteriorVector& a, const ExteriorVector& b) {
  return a.n_ == b.n_ && a.degree_ == b.degree_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

bool ExteriorVector::projectively_equal(const ExteriorVector& other) const {
  check_compatible(other);
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  return normalized() == other.normalized();
}

// ---------------------------------------------------------------------------
// Products

ExteriorVector wedge(const ExteriorVector& u, const ExteriorVector& v) {
  if (u.ambient() != v.ambient()) throw DimensionError("wedge across ambient dimensions");
  if (!(u.field() == v.field())) throw MalformedInput("wedge across fields");
  if (u.degree() + v.degree() > u.ambient()) {
    throw DimensionError("wedge degree " + std::to_string(u.degree() + v.degree()) +
                         " exceeds ambient dimension " + std::to_string(u.ambient()));
  }
  ExteriorVector out(u.ambient(), u.degree() + v.degree(), u.field());
  for (const auto& [a, ca] : u.terms()) {
    for (const auto& [b, cb] : v.terms()) {
      const int sign = merge_sign(a, b);
      if (sign == 0) continue;
      const FieldElement product = ca * cb;
      out.add_term(a | b, sign > 0 ? product : -product);
    }
  }
  return out;
}

ExteriorVector contract(const MultiIndex& phi, const ExteriorVector& w) {
  if (phi.ambient() != w.ambient()) throw DimensionError("contract across ambient dimensions");
  if (phi.degree() + 1 != w.degree()) {
    throw DimensionError("contract needs deg(phi) = deg(w) - 1");
  }
  ExteriorVector out(w.ambient(), 1, w.field());
  for (const auto& [mask, value] : w.terms()) {
    if ((mask & phi.mask()) != phi.mask()) continue;
    const Mask rest = mask ^ phi.mask();
    out.add_term(rest, merge_sign(phi.mask(), rest) > 0 ? value : -value);
  }
  return out;
}

bool plucker_relations_hold(const ExteriorVector& w) {
  if (w.is_zero()) throw PreconditionError("decomposability of the zero vector is undefined");
  const int r = w.degree();
  const int n = w.ambient();
  if (r <= 1 || r >= n - 1) return true;
  for (Mask phi : basis_masks(n, r - 1)) {
    const ExteriorVector c = contract(MultiIndex(phi, n), w);
    if (c.is_zero()) continue;
    if (!wedge(c, w).is_zero()) return false;
  }
  return true;
}

ExteriorVector random_exterior(int n, int degree, const Field& field, Rng& rng) {
  check_ambient(n);
  if (degree < 0 || degree > n) {
    throw DimensionError("random_exterior: degree " + std::to_string(degree) +
                         " exceeds ambient dimension " + std::to_string(n));
  }
  const auto masks = basis_masks(n, degree);
  while (true) {
    ExteriorVector v(n, degree, field);
    for (Mask m : masks) v.add_term(m, sample_scalar(field, rng));
    if (!v.is_zero()) return v;
  }
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const ExteriorVector& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, value] : v.terms()) {
    terms.push_back({MultiIndex(mask, v.ambient()).indices(), value.to_string()});
  }
  nlohmann::json j{{"n", v.ambient()}, {"degree", v.degree()}, {"field", v.field().tag()}};
  if (!v.field().is_rational()) j["prime"] = v.field().modulus();
  j["terms"] = std::move(terms);
  return j;
}

ExteriorVector exterior_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int degree = j.at("degree").get<int>();
    const std::string tag = j.value("field", std::string("q"));
    Field field = Field::rationals();
    if (tag == "fp") {
      field = Field::prime(j.value("prime", kDefaultPrime));
    } else if (tag != "q") {
      throw MalformedInput("unknown field tag: " + tag);
    }
    ExteriorVector v(n, degree, field);
    for (const auto& term : j.at("terms")) {
      const auto indices = term.at(0).get<std::vector<int>>();
      const MultiIndex index = MultiIndex::of(indices, n);
      if (index.degree() != degree) throw MalformedInput("term degree mismatch");
      if (v.terms().count(index.mask())) throw MalformedInput("repeated term");
      const auto value = FieldElement::parse(term.at(1).get<std::string>(), field);
      if (value.is_zero()) throw MalformedInput("stored zero coefficient");
      v.add_term(index.mask(), value);
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("exterior vector JSON: ") + e.what());
  }
}

}  // namespace plueckerlab
