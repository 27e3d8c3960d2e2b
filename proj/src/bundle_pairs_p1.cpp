#include "plueckerlab/bundle_pairs_p1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "plueckerlab/plucker_form.hpp"

namespace plueckerlab {

// ---------------------------------------------------------------------------
// P1Point and BinaryForm

P1Point::P1Point(FieldElement u, FieldElement v) {
  if (u.is_zero() && v.is_zero()) throw MalformedInput("(0, 0) is not a point of P^1");
  if (!v.is_zero()) {
    u_ = u / v;
    v_ = v.field().one();
  } else {
    u_ = u.field().one();
    v_ = v;
  }
}

P1Point P1Point::affine(const FieldElement& x) { return P1Point(x, x.field().one()); }

P1Point P1Point::infinity(const Field& field) { return P1Point(field.one(), field.zero()); }

BinaryForm BinaryForm::zero(int degree, const Field& field) {
  if (degree < 0) throw PreconditionError("binary form of negative degree");
  return BinaryForm{degree, std::vector<FieldElement>(static_cast<std::size_t>(degree) + 1, field.zero())};
}

BinaryForm BinaryForm::monomial(int degree, int a, const Field& field) {
  BinaryForm f = zero(degree, field);
  f.coeffs.at(static_cast<std::size_t>(a)) = field.one();
  return f;
}

FieldElement BinaryForm::eval(const P1Point& x) const {
  // Horner in u with v-powers folded in from the top coefficient down.
  FieldElement acc = coeffs.back();
  for (int a = degree - 1; a >= 0; --a) {
    acc = acc * x.u() + coeffs[static_cast<std::size_t>(a)] * x.v().pow(static_cast<std::uint64_t>(degree - a));
  }
  return acc;
}

bool BinaryForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.is_zero(); });
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm out = BinaryForm::zero(a.degree + b.degree, a.coeffs.front().field());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& other) {
  if (degree != other.degree) throw DimensionError("adding binary forms of different degree");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  return *this;
}

// ---------------------------------------------------------------------------
// Pairs

bool BundlePairP1::is_balanced() const {
  return std::all_of(splitting.begin(), splitting.end(), [&](int d) { return d == m - 1; });
}

BundlePairP1 make_pair(const std::vector<int>& splitting, int m, const Field& field) {
  const int r = static_cast<int>(splitting.size());
  if (r < 1) throw PreconditionError("splitting type must be nonempty");
  if (m < 2) throw PreconditionError("make_pair needs m >= 2");
  if (r * m > kMaxAmbient) throw DimensionError("rm exceeds 64");
  const int total = std::accumulate(splitting.begin(), splitting.end(), 0);
  if (total != r * (m - 1)) {
    throw PreconditionError("splitting degrees sum to " + std::to_string(total) + ", expected r(m-1) = " +
                            std::to_string(r * (m - 1)));
  }
  if (std::any_of(splitting.begin(), splitting.end(), [](int d) { return d < 0; })) {
    throw PreconditionError("negative summand: E is not generated by H^0(E)");
  }
  BundlePairP1 pair{r, m, splitting, {}, true, field};
  for (int i = 0; i < r; ++i) {
    const int d = splitting[static_cast<std::size_t>(i)];
    for (int a = 0; a <= d; ++a) {
      Section s;
      for (int c = 0; c < r; ++c) {
        const int dc = splitting[static_cast<std::size_t>(c)];
        s.push_back(c == i ? BinaryForm::monomial(dc, a, field) : BinaryForm::zero(dc, field));
      }
      pair.sections.push_back(std::move(s));
    }
  }
  if (pair.section_count() != r * m) {
    throw PreconditionError("section count " + std::to_string(pair.section_count()) + " differs from rm");
  }
  return pair;
}

BundlePairP1 change_basis(const BundlePairP1& pair, const DenseMatrix& g) {
  const auto n = static_cast<std::size_t>(pair.section_count());
  if (g.rows() != n || g.cols() != n) throw DimensionError("basis change must be rm x rm");
  if (mat_det(g).is_zero()) throw PreconditionError("basis change is singular");
  BundlePairP1 out = pair;
  for (std::size_t j = 0; j < n; ++j) {
    Section s;
    for (int c = 0; c < pair.r; ++c) s.push_back(BinaryForm::zero(pair.splitting[static_cast<std::size_t>(c)], pair.field));
    for (std::size_t k = 0; k < n; ++k) {
      const auto& gjk = g.at(j, k);
      if (gjk.is_zero()) continue;
      for (int c = 0; c < pair.r; ++c) {
        auto scaled = pair.sections[k][static_cast<std::size_t>(c)];
        for (auto& coeff : scaled.coeffs) coeff *= gjk;
        s[static_cast<std::size_t>(c)] += scaled;
      }
    }
    out.sections[j] = std::move(s);
  }
  return out;
}

DenseMatrix evaluation_matrix(const BundlePairP1& pair, std::span<const P1Point> points) {
  const auto r = static_cast<std::size_t>(pair.r);
  DenseMatrix ev(pair.sections.size(), r * points.size(), pair.field);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < pair.sections.size(); ++j) {
      for (std::size_t c = 0; c < r; ++c) ev.at(j, i * r + c) = pair.sections[j][c].eval(points[i]);
    }
  }
  return ev;
}

FieldElement divisor_value(const BundlePairP1& pair, std::span<const P1Point> points) {
  if (points.size() != static_cast<std::size_t>(pair.m)) throw DimensionError("divisor_value needs m points");
  return mat_det(evaluation_matrix(pair, points));
}

std::vector<P1Point> sample_points(const Field& field, int count, Rng& rng, bool distinct) {
  std::vector<P1Point> points;
  while (static_cast<int>(points.size()) < count) {
    auto x = P1Point::affine(sample_scalar(field, rng));
    if (distinct && std::find(points.begin(), points.end(), x) != points.end()) continue;
    points.push_back(std::move(x));
  }
  return points;
}

FieldElement diagonal_product(std::span<const P1Point> points, int power) {
  if (points.empty()) throw PreconditionError("diagonal_product of no points");
  FieldElement acc = points.front().u().field().one();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      acc *= (points[i].u() * points[j].v() - points[j].u() * points[i].v()).pow(static_cast<std::uint64_t>(power));
    }
  }
  return acc;
}

bool has_plucker_form(const BundlePairP1& pair, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("has_plucker_form needs trials >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto points = sample_points(pair.field, pair.m, rng, true);
    if (!divisor_value(pair, points).is_zero()) return true;
  }
  return false;
}

std::optional<double> plucker_form_failure_bound(const BundlePairP1& pair, int trials) {
  if (pair.field.is_rational()) return std::nullopt;
  const double degree = static_cast<double>(pair.m) * pair.det_degree();
  return std::pow(degree / static_cast<double>(pair.field.modulus()), trials);
}

DivisorReport diagonal_factor_check(const BundlePairP1& pair, int trials, std::uint64_t seed) {
  const Field& field = pair.field;
  Rng rng(seed);
  DivisorReport report{field.zero(), trials, false, false, std::nullopt, std::nullopt};

  std::optional<std::vector<P1Point>> fit;
  for (int attempt = 0; attempt < std::max(trials, 8); ++attempt) {
    auto points = sample_points(field, pair.m, rng, true);
    if (!divisor_value(pair, points).is_zero()) {
      fit = std::move(points);
      break;
    }
  }
  if (!fit) {
    report.identically_zero = true;
    return report;
  }
  report.constant_c = divisor_value(pair, *fit) / diagonal_product(*fit, pair.r);

  std::optional<BundlePairP1> line;
  if (pair.is_balanced()) {
    line = make_pair({pair.m - 1}, pair.m, field);
    report.power_constant =
        divisor_value(pair, *fit) / divisor_value(*line, *fit).pow(static_cast<std::uint64_t>(pair.r));
    report.power_matched = true;
  }

  bool matched = true;
  for (int t = 0; t < trials; ++t) {
    const auto points = sample_points(field, pair.m, rng, true);
    const FieldElement det = divisor_value(pair, points);
    if (!(det == report.constant_c * diagonal_product(points, pair.r))) matched = false;
    if (line) {
      const FieldElement base = divisor_value(*line, points).pow(static_cast<std::uint64_t>(pair.r));
      if (!(det == *report.power_constant * base)) report.power_matched = false;
    }
  }
  report.all_matched = matched && !report.constant_c.is_zero();
  return report;
}

nlohmann::json to_json(const DivisorReport& report) {
  nlohmann::json j{{"constant_c", report.constant_c.to_string()},
                   {"trials", report.trials},
                   {"all_matched", report.all_matched},
                   {"identically_zero", report.identically_zero}};
  if (report.power_constant) j["power_constant"] = report.power_constant->to_string();
  if (report.power_matched) j["power_matched"] = *report.power_matched;
  return j;
}

// ---------------------------------------------------------------------------
// Symbolic expansion

namespace {

// Sparse polynomial in 2m variables ordered (u_1, v_1, ..., u_m, v_m).
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial(std::size_t variables, const Field& field) : variables_(variables), field_(field) {}

  static Polynomial constant(std::size_t variables, const FieldElement& c) {
    Polynomial p(variables, c.field());
    p.add(Exponents(variables, 0), c);
    return p;
  }

  void add(const Exponents& e, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial operator*(const Polynomial& other) const {
    Polynomial out(variables_, field_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : other.terms_) {
        Exponents e(variables_);
        for (std::size_t i = 0; i < variables_; ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) add(e, c);
    return *this;
  }

  Polynomial scaled(const FieldElement& s) const {
    Polynomial out(variables_, field_);
    for (const auto& [e, c] : terms_) out.add(e, c * s);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponents, FieldElement>& terms() const { return terms_; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  std::size_t variables_;
  Field field_;
  std::map<Exponents, FieldElement> terms_;
};

// A binary form evaluated symbolically at point i.
Polynomial form_at_point(const BinaryForm& f, std::size_t point, std::size_t variables, const Field& field) {
  Polynomial p(variables, field);
  for (int a = 0; a <= f.degree; ++a) {
    Polynomial::Exponents e(variables, 0);
    e[2 * point] = a;
    e[2 * point + 1] = f.degree - a;
    p.add(e, f.coeffs[static_cast<std::size_t>(a)]);
  }
  return p;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions & 1) ? -1 : 1;
}

}  // namespace

SymbolicCheck symbolic_divisor_check(const BundlePairP1& pair) {
  const std::size_t n = pair.sections.size();
  if (n > 8) throw UnsupportedError("symbolic expansion is limited to rm <= 8");
  const Field& field = pair.field;
  const std::size_t vars = 2 * static_cast<std::size_t>(pair.m);
  const auto r = static_cast<std::size_t>(pair.r);

  // Symbolic evaluation matrix: row j, column i*r + c.
  std::vector<Polynomial> entries;
  entries.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t col = 0; col < n; ++col)
      entries.push_back(form_at_point(pair.sections[j][col % r], col / r, vars, field));

  Polynomial det(vars, field);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Polynomial term = Polynomial::constant(vars, field.from_int(permutation_sign(perm)));
    for (std::size_t j = 0; j < n && !term.is_zero(); ++j) term = term * entries[j * n + perm[j]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  Polynomial reference = Polynomial::constant(vars, field.one());
  for (std::size_t i = 0; i < static_cast<std::size_t>(pair.m); ++i) {
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(pair.m); ++j) {
      Polynomial factor(vars, field);
      Polynomial::Exponents e(vars, 0);
      e[2 * i] = 1;
      e[2 * j + 1] = 1;
      factor.add(e, field.one());
      e.assign(vars, 0);
      e[2 * j] = 1;
      e[2 * i + 1] = 1;
      factor.add(e, -field.one());
      for (std::size_t p = 0; p < r; ++p) reference = reference * factor;
    }
  }

  SymbolicCheck out{false, field.zero(), det.size()};
  if (det.is_zero()) return out;
  const auto& [lead_exp, lead_coeff] = *reference.terms().begin();
  const auto it = det.terms().find(lead_exp);
  if (it == det.terms().end()) return out;
  out.constant_c = it->second / lead_coeff;
  out.matched = det == reference.scaled(out.constant_c);
  return out;
}

// ---------------------------------------------------------------------------
// Determinant map and classifying map

DenseMatrix det_map_matrix(const BundlePairP1& pair) {
  const int n = pair.section_count();
  const int r = pair.r;
  const Field& field = pair.field;
  const auto wedges = basis_masks(n, r);
  DenseMatrix d(static_cast<std::size_t>(pair.det_degree()) + 1, wedges.size(), field);

  std::vector<std::size_t> perm(static_cast<std::size_t>(r));
  for (std::size_t col = 0; col < wedges.size(); ++col) {
    const auto chosen = MultiIndex(wedges[col], n).indices();
    BinaryForm det = BinaryForm::zero(pair.det_degree(), field);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // Component c of section chosen[perm[c]].
      BinaryForm term = pair.sections[static_cast<std::size_t>(chosen[perm[0]] - 1)][0];
      for (std::size_t c = 1; c < perm.size(); ++c) {
        term = term * pair.sections[static_cast<std::size_t>(chosen[perm[c]] - 1)][c];
      }
      if (permutation_sign(perm) < 0) {
        for (auto& coeff : term.coeffs) coeff = -coeff;
      }
      det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t a = 0; a < det.coeffs.size(); ++a) d.at(a, col) = det.coeffs[a];
  }
  return d;
}

std::size_t det_map_rank(const BundlePairP1& pair) { return mat_rank(det_map_matrix(pair)); }

ExteriorVector classify_point(const BundlePairP1& pair, const P1Point& x) {
  const int n = pair.section_count();
  std::vector<ExteriorVector> rows;
  for (int c = 0; c < pair.r; ++c) {
    std::vector<FieldElement> values;
    for (const auto& s : pair.sections) values.push_back(s[static_cast<std::size_t>(c)].eval(x));
    rows.push_back(ExteriorVector::from_coordinates(values, pair.field));
  }
  ExteriorVector w = wedge_product(rows, n, pair.field);
  if (w.is_zero()) throw PreconditionError("sections do not generate E at this point");
  return w;
}

std::vector<FieldElement> evaluation_functional(const BundlePairP1& pair, const P1Point& x) {
  std::vector<FieldElement> f;
  const int degree = pair.det_degree();
  for (int a = 0; a <= degree; ++a) {
    f.push_back(x.u().pow(static_cast<std::uint64_t>(a)) * x.v().pow(static_cast<std::uint64_t>(degree - a)));
  }
  return f;
}

ExteriorVector lambda_image(const BundlePairP1& pair, std::span<const FieldElement> functional) {
  const DenseMatrix d = det_map_matrix(pair);
  if (functional.size() != d.rows()) throw DimensionError("functional has the wrong length");
  if (std::all_of(functional.begin(), functional.end(), [](const auto& c) { return c.is_zero(); })) {
    throw PreconditionError("zero functional has no image");
  }
  const int n = pair.section_count();
  const auto wedges = basis_masks(n, pair.r);
  ExteriorVector out(n, pair.r, pair.field);
  for (std::size_t col = 0; col < d.cols(); ++col) {
    FieldElement value = pair.field.zero();
    for (std::size_t a = 0; a < d.rows(); ++a) value += d.at(a, col) * functional[a];
    out.add_term(wedges[col], value);
  }
  if (out.is_zero()) throw PreconditionError("functional annihilates the image of the determinant map");
  return out;
}

std::size_t span_dimension(const BundlePairP1& pair, int samples, std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("span_dimension needs samples >= 1");
  Rng rng(seed);
  const auto wedges = basis_masks(pair.section_count(), pair.r);
  const auto points = sample_points(pair.field, samples, rng, true);
  DenseMatrix m(points.size(), wedges.size(), pair.field);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto w = classify_point(pair, points[i]);
    for (std::size_t col = 0; col < wedges.size(); ++col) m.at(i, col) = w.coefficient(wedges[col]);
  }
  return mat_rank(m);
}

bool two_point_surjectivity(const BundlePairP1& pair, const P1Point& x, const P1Point& y) {
  if (x == y) throw PreconditionError("two_point_surjectivity needs distinct points");
  const std::vector<P1Point> points{x, y};
  return mat_rank(evaluation_matrix(pair, points)) == static_cast<std::size_t>(2 * pair.r);
}

nlohmann::json pair_description(const BundlePairP1& pair) {
  nlohmann::json j{{"r", pair.r}, {"m", pair.m}, {"splitting", pair.splitting}, {"field", pair.field.tag()}};
  if (!pair.field.is_rational()) j["prime"] = pair.field.modulus();
  return j;
}

BundlePairP1 pair_from_description(const nlohmann::json& j) {
  try {
    const int r = j.at("r").get<int>();
    const int m = j.at("m").get<int>();
    const auto splitting = j.at("splitting").get<std::vector<int>>();
    if (static_cast<int>(splitting.size()) != r) throw MalformedInput("splitting length differs from r");
    const std::string tag = j.value("field", std::string("fp"));
    Field field = Field::rationals();
    if (tag == "fp") {
      field = Field::prime(j.value("prime", kDefaultPrime));
    } else if (tag != "q") {
      throw MalformedInput("unknown field tag: " + tag);
    }
    return make_pair(splitting, m, field);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("pair description JSON: ") + e.what());
  }
}

}  // namespace plueckerlab
