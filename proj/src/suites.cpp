#include "plueckerlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "plueckerlab/bundle_pairs_p1.hpp"
#include "plueckerlab/exterior.hpp"
#include "plueckerlab/grassmann.hpp"
#include "plueckerlab/plucker_form.hpp"

namespace plueckerlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json tuple_json(std::span<const ExteriorVector> slots) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : slots) out.push_back(to_json(s));
  return out;
}

nlohmann::json points_json(std::span<const P1Point> points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : points) out.push_back({x.u().to_string(), x.v().to_string()});
  return out;
}

// Coefficients (constant term first) of the polynomial of degree < xs.size()
// through the points (xs[i], ys[i]); Newton divided differences.
std::vector<FieldElement> interpolate(const std::vector<FieldElement>& xs, std::vector<FieldElement> ys) {
  const int n = static_cast<int>(xs.size());
  for (int j = 1; j < n; ++j) {
    for (int i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  }
  const Field field = xs.front().field();
  std::vector<FieldElement> poly{ys[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    std::vector<FieldElement> next(poly.size() + 1, field.zero());
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= xs[i] * poly[k];
    }
    next[0] += ys[i];
    poly = std::move(next);
  }
  return poly;
}

ExteriorVector random_decomposable(int r, int n, const Field& field, Rng& rng) {
  return random_grass_point(r, n, field, rng).plucker;
}

// Every vector of degree r <= 1 or r >= n - 1 is decomposable.
bool has_indecomposables(int r, int n) { return r >= 2 && r <= n - 2; }

ExteriorVector random_indecomposable(int r, int n, const Field& field, Rng& rng) {
  if (!has_indecomposables(r, n)) throw PreconditionError("every vector of this shape is decomposable");
  while (true) {
    auto w = random_exterior(n, r, field, rng);
    if (!plucker_relations_hold(w)) return w;
  }
}

// e_{1..r-2} ^ (e_{r-1,r} + e_{r+1,r+2}): indecomposable with w ^ w = 0 once r >= 3.
ExteriorVector crafted_indecomposable(int r, int n, const Field& field) {
  ExteriorVector head(n, 0, field);
  head.add_term(0, field.one());
  for (int i = 1; i <= r - 2; ++i) head = wedge(head, ExteriorVector::basis(MultiIndex::of({i}, n), field));
  ExteriorVector tail = ExteriorVector::basis(MultiIndex::of({r - 1, r}, n), field) +
                        ExteriorVector::basis(MultiIndex::of({r + 1, r + 2}, n), field);
  return wedge(head, tail);
}

std::vector<ExteriorVector> random_slots(int r, int m, const Field& field, Rng& rng) {
  std::vector<ExteriorVector> slots;
  for (int s = 0; s < m; ++s) slots.push_back(random_exterior(r * m, r, field, rng));
  return slots;
}

void require_shape(const ExperimentConfig& c, int min_m) {
  if (c.r < 1) throw UnsupportedError("unsupported hypothesis: r must be positive");
  if (c.m < min_m) {
    throw UnsupportedError("unsupported hypothesis: " + c.command + " requires m >= " + std::to_string(min_m));
  }
  if (c.r * c.m > kMaxAmbient) throw UnsupportedError("unsupported hypothesis: rm exceeds 64");
  if (c.trials < 1) throw PreconditionError("trials must be positive");
}

// ---------------------------------------------------------------------------

void taylor_check(const ExperimentConfig& c, Report& report) {
  require_shape(c, 1);
  const Field field = c.make_field();
  const int r = c.r, m = c.m;
  std::vector<FieldElement> eps;
  for (int j = 0; j <= m; ++j) eps.push_back(field.from_int(j));
  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    const PointTuple w(r, m, random_slots(r, m, field, rng));
    const auto t = random_slots(r, m, field, rng);

    std::vector<FieldElement> values;
    for (const auto& e : eps) {
      std::vector<ExteriorVector> line;
      for (int s = 0; s < m; ++s) line.push_back(w.slot(s) + e * t[static_cast<std::size_t>(s)]);
      values.push_back(top_coefficient(line));
    }
    const auto coeffs = interpolate(eps, values);
    bool ok = true;
    nlohmann::json polars = nlohmann::json::array();
    for (int k = 0; k <= m; ++k) {
      const auto pk = polar(k, w, t);
      polars.push_back(pk.to_string());
      if (!(pk == coeffs[static_cast<std::size_t>(k)])) ok = false;
    }
    report.record("taylor", {{"sample", i}, {"polars", polars}}, ok, seconds_since(start),
                  {{"w", tuple_json(w.slots())}, {"t", tuple_json(t)}});
  }
}

void expand_check(const ExperimentConfig& c, Report& report) {
  require_shape(c, 1);
  const Field field = c.make_field();
  const int r = c.r, m = c.m;
  {
    const auto start = Clock::now();
    const auto terms = expand_form(r, m);
    std::uint64_t expected = 1;
    for (int s = 0; s < m; ++s) expected *= binomial(r * (m - s), r);
    report.record("term-count", {{"terms", terms.size()}, {"expected", expected}}, terms.size() == expected,
                  seconds_since(start));
    for (int i = 0; i < c.trials; ++i) {
      const auto t0 = Clock::now();
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
      const PointTuple p(r, m, random_slots(r, m, field, rng));
      const auto direct = eval_form(p);
      const auto expanded = evaluate_expansion(terms, p.slots());
      report.record("expansion", {{"sample", i}, {"value", direct.to_string()}}, direct == expanded,
                    seconds_since(t0), {{"tuple", tuple_json(p.slots())}, {"expansion", expanded.to_string()}});
    }
  }
}

void multiplicity_bound(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const Field field = c.make_field();
  const int r = c.r, m = c.m, n = r * m;
  auto check = [&](const std::string& kind, int i, const PointTuple& p, std::optional<int> expected) {
    const auto start = Clock::now();
    const int mult = multiplicity_at(p);
    // Multiplicity >= 1 is membership of the hypersurface.
    bool ok = mult <= m - 1 && (mult >= 1) == eval_form(p).is_zero();
    if (expected) ok = ok && mult == *expected;
    report.record(kind, {{"sample", i}, {"multiplicity", mult}}, ok, seconds_since(start),
                  {{"tuple", tuple_json(p.slots())}});
  };
  for (int i = 0; i < c.trials; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    check("random", i, PointTuple(r, m, random_slots(r, m, field, rng)), std::nullopt);
  }
  // Adversarial: repeated slots, diagonals and slots sharing a common vector.
  const int adversarial = std::max(1, c.trials / 10);
  for (int i = 0; i < adversarial; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
    const auto w = random_exterior(n, r, field, rng);
    const auto diag = PointTuple::diagonal(w, m);
    check("diagonal", i, diag, diagonal_multiplicity(w));
    const auto dec = random_decomposable(r, n, field, rng);
    // Decomposable diagonals: all partial wedges of size 2 vanish.
    check("decomposable-diagonal", i, PointTuple::diagonal(dec, m), m - 1);
    auto slots = random_slots(r, m, field, rng);
    slots[1] = slots[0];
    check("repeated-slot", i, PointTuple(r, m, slots), std::nullopt);
    const auto common = random_exterior(n, 1, field, rng);
    std::vector<ExteriorVector> sharing;
    for (int s = 0; s < m; ++s) sharing.push_back(wedge(common, random_exterior(n, r - 1, field, rng)));
    check("common-vector", i, PointTuple(r, m, sharing), m - 1);
  }
}

void prop32(const ExperimentConfig& c, Report& report) {
  require_shape(c, 1);
  const Field field = c.make_field();
  const int r = c.r, d = r * c.m;
  if (d - 2 * r < 1) throw UnsupportedError("unsupported hypothesis: rank criterion needs d - 2r >= 1");
  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    const auto w = (i % 2 == 0) ? random_decomposable(r, d, field, rng) : random_exterior(d, r, field, rng);
    const bool oracle = plucker_relations_hold(w);
    bool ok = true;
    nlohmann::json ranks = nlohmann::json::array();
    for (int s = 1; s <= d - 2 * r; ++s) {
      const std::size_t rank = mu_rank(w, s);
      const std::size_t bound = binomial(d - r, s);
      ranks.push_back({{"s", s}, {"rank", rank}, {"bound", bound}});
      if (rank < bound || (rank == bound) != oracle) ok = false;
    }
    report.record("rank", {{"sample", i}, {"decomposable", oracle}, {"ranks", ranks}}, ok, seconds_since(start),
                  {{"w", to_json(w)}});
  }
}

void classify_case(const ExperimentConfig& c, Report& report, const std::string& kind, int i,
                   const ExteriorVector& w, Verdict expected) {
  const auto start = Clock::now();
  const auto verdict = classify_grassmannian(w, c.r, c.m);
  bool ok = verdict.tag == expected;
  if (expected == Verdict::InGrassmannian) ok = ok && verdict.observed_codim == verdict.threshold;
  if (expected == Verdict::FailsTangentBound) ok = ok && verdict.observed_codim > verdict.threshold;
  nlohmann::json detail{{"sample", i}, {"verdict", to_string(verdict.tag)}, {"threshold", verdict.threshold}};
  detail["observed_codim"] = verdict.observed_codim ? nlohmann::json(*verdict.observed_codim) : nlohmann::json();
  report.record(kind, std::move(detail), ok, seconds_since(start), {{"w", to_json(w)}});
}

void theorem31(const ExperimentConfig& c, Report& report) {
  require_shape(c, 3);
  const Field field = c.make_field();
  const int r = c.r, n = r * c.m;
  for (int i = 0; i < c.trials; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    classify_case(c, report, "decomposable", i, random_decomposable(r, n, field, rng), Verdict::InGrassmannian);
  }
  for (int i = 0; i < c.trials; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
    if (r % 2 == 0) {
      ExteriorVector w = random_exterior(n, r, field, rng);
      while (wedge(w, w).is_zero()) w = random_exterior(n, r, field, rng);
      classify_case(c, report, "square-nonzero", i, w, Verdict::FailsMultiplicity);
    } else if (has_indecomposables(r, n)) {
      classify_case(c, report, "indecomposable", i, random_indecomposable(r, n, field, rng),
                    Verdict::FailsTangentBound);
    }
  }
  if (r >= 2) {
    const auto w = crafted_indecomposable(r, n, field);
    const Verdict expected = wedge(w, w).is_zero() ? Verdict::FailsTangentBound : Verdict::FailsMultiplicity;
    classify_case(c, report, "crafted", 0, w, expected);
  }
}

void lemma33(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const Field field = c.make_field();
  const int r = c.r, m = c.m, n = r * m;
  if (m == 2) {
    // Small-m branch: codimension m - 1 at decomposable diagonal points.
    const std::size_t expected = small_m_codim(r, m);
    for (int i = 0; i < c.trials; ++i) {
      const auto start = Clock::now();
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
      const auto w = random_decomposable(r, n, field, rng);
      const std::size_t codim = tangent_codim(PointTuple::diagonal(w, m), m - 1);
      report.record("small-m", {{"sample", i}, {"observed_codim", codim}, {"expected", expected}},
                    codim == expected, seconds_since(start), {{"w", to_json(w)}});
    }
    // Experiment, not asserted: indecomposable diagonal points of multiplicity
    // m - 1 give the same codimension, so the test cannot separate them here.
    std::vector<ExteriorVector> probes;
    for (int i = 0; i < c.trials && r % 2 == 1 && has_indecomposables(r, n); ++i) {
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
      probes.push_back(random_indecomposable(r, n, field, rng));
    }
    if (r % 2 == 0 && r >= 4) probes.push_back(crafted_indecomposable(r, n, field));
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto start = Clock::now();
      const std::size_t codim = tangent_codim(PointTuple::diagonal(probes[i], m), m - 1);
      report.record("small-m-experiment",
                    {{"sample", i}, {"observed_codim", codim}, {"separates", codim != expected}, {"asserted", false}},
                    true, seconds_since(start));
    }
    return;
  }
  const std::size_t threshold = grassmann_threshold(r, m);
  const std::uint64_t closed = static_cast<std::uint64_t>(r % 2 == 0 ? m : m - 1) * binomial((m - 1) * r, r);
  report.record("threshold", {{"threshold", threshold}, {"closed_form", closed}}, threshold == closed, 0.0);
  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    const auto w = random_decomposable(r, n, field, rng);
    const std::size_t codim = tangent_codim(PointTuple::diagonal(w, m), m - 1);
    report.record("decomposable", {{"sample", i}, {"observed_codim", codim}, {"threshold", threshold}},
                  codim == threshold, seconds_since(start), {{"w", to_json(w)}});
  }
  // Indecomposable diagonal points of multiplicity m - 1 exceed the threshold.
  std::vector<ExteriorVector> hard;
  if (r % 2 == 1 && has_indecomposables(r, n)) {
    for (int i = 0; i < c.trials; ++i) {
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
      hard.push_back(random_indecomposable(r, n, field, rng));
    }
  } else if (r >= 4) {
    hard.push_back(crafted_indecomposable(r, n, field));
  }
  for (std::size_t i = 0; i < hard.size(); ++i) {
    const auto start = Clock::now();
    const std::size_t codim = tangent_codim(PointTuple::diagonal(hard[i], m), m - 1);
    report.record("indecomposable", {{"sample", i}, {"observed_codim", codim}, {"threshold", threshold}},
                  codim > threshold, seconds_since(start), {{"w", to_json(hard[i])}});
  }
}

// r x n full-rank matrix whose rows satisfy sum_j f_j a_j = 0.
DenseMatrix hyperplane_basis(int r, int n, const std::vector<FieldElement>& f, const Field& field, Rng& rng) {
  while (true) {
    auto a = DenseMatrix::random(static_cast<std::size_t>(r), static_cast<std::size_t>(n), field, rng);
    const auto last = static_cast<std::size_t>(n - 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      FieldElement acc = field.zero();
      for (std::size_t j = 0; j < last; ++j) acc += f[j] * a.at(i, j);
      a.at(i, last) = -acc / f[last];
    }
    if (mat_rank(a) == static_cast<std::size_t>(r)) return a;
  }
}

void thm38(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const Field field = c.make_field();
  const int r = c.r, m = c.m, n = r * m;
  auto check = [&](const std::string& kind, int i, const std::vector<GrassPoint>& points, bool force_zero) {
    const auto start = Clock::now();
    std::vector<ExteriorVector> slots;
    for (const auto& p : points) slots.push_back(p.plucker);
    const FieldElement det = ev_m_det(points);
    const FieldElement form = eval_form(PointTuple(r, m, slots));
    bool ok = det == form && det.is_zero() == form.is_zero();
    if (force_zero) ok = ok && det.is_zero();
    report.record(kind, {{"sample", i}, {"ev_det", det.to_string()}, {"form", form.to_string()}}, ok,
                  seconds_since(start), {{"tuple", tuple_json(slots)}});
  };
  for (int i = 0; i < c.trials; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    std::vector<GrassPoint> points;
    for (int s = 0; s < m; ++s) points.push_back(random_grass_point(r, n, field, rng));
    check("random", i, points, false);
  }
  const int engineered = std::max(1, c.trials / 10);
  for (int i = 0; i < engineered; ++i) {
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
    std::vector<FieldElement> f;
    for (int j = 0; j < n; ++j) f.push_back(sample_scalar(field, rng));
    while (f.back().is_zero()) f.back() = sample_scalar(field, rng);
    std::vector<GrassPoint> points;
    for (int s = 0; s < m; ++s) points.push_back(plucker_embed(hyperplane_basis(r, n, f, field, rng)));
    check("hyperplane", i, points, true);
  }
}

BundlePairP1 config_pair(const ExperimentConfig& c, bool unbalanced_default) {
  std::vector<int> splitting = c.splitting;
  if (splitting.empty()) {
    splitting.assign(static_cast<std::size_t>(c.r), c.m - 1);
    if (unbalanced_default && c.r >= 2) {
      std::fill(splitting.begin(), splitting.end(), 0);
      splitting.front() = c.r * (c.m - 1);
    }
  }
  if (static_cast<int>(splitting.size()) != c.r) {
    throw PreconditionError("splitting has " + std::to_string(splitting.size()) + " entries, expected r = " +
                            std::to_string(c.r));
  }
  return make_pair(splitting, c.m, c.make_field());
}

DenseMatrix random_invertible(std::size_t n, const Field& field, Rng& rng) {
  while (true) {
    auto g = DenseMatrix::random(n, n, field, rng);
    if (!mat_det(g).is_zero()) return g;
  }
}

void p1_divisor(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const auto pair = config_pair(c, false);
  const Field& field = pair.field;
  const int m = c.m;
  report.record("pair", pair_description(pair), true, 0.0);

  {
    const auto start = Clock::now();
    const auto divisor = diagonal_factor_check(pair, c.trials, c.seed);
    bool ok = pair.is_balanced() ? (divisor.all_matched && divisor.power_matched.value_or(false))
                                 : divisor.identically_zero;
    report.record("diagonal-factor", to_json(divisor), ok, seconds_since(start), pair_description(pair));
  }

  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    auto points = sample_points(field, m, rng, true);
    if (i % 5 == 4) points[1] = points[0];
    const FieldElement det = divisor_value(pair, points);
    std::vector<ExteriorVector> slots;
    for (const auto& x : points) slots.push_back(classify_point(pair, x));
    const FieldElement raw = top_coefficient(slots);
    const bool form_zero = eval_form(PointTuple(pair.r, m, slots)).is_zero();
    bool ok = det == raw && det.is_zero() == form_zero;
    if (i % 5 == 4) ok = ok && det.is_zero();
    report.record("pullback", {{"sample", i}, {"det", det.to_string()}}, ok, seconds_since(start),
                  {{"points", points_json(points)}});
  }

  if (pair.section_count() <= 6) {
    const auto start = Clock::now();
    const auto symbolic = symbolic_divisor_check(pair);
    const bool ok = pair.is_balanced() ? symbolic.matched : symbolic.terms == 0;
    report.record("symbolic",
                  {{"matched", symbolic.matched}, {"constant_c", symbolic.constant_c.to_string()},
                   {"terms", symbolic.terms}},
                  ok, seconds_since(start));
  }

  const auto n = static_cast<std::size_t>(pair.section_count());
  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(2 * c.trials + i));
    const auto g = random_invertible(n, field, rng);
    const auto changed = change_basis(pair, g);
    const auto points = sample_points(field, m, rng, true);
    const FieldElement before = divisor_value(pair, points);
    const FieldElement after = divisor_value(changed, points);
    const bool ok = after == mat_det(g) * before && after.is_zero() == before.is_zero();
    report.record("basis-change", {{"sample", i}, {"before", before.to_string()}, {"after", after.to_string()}},
                  ok, seconds_since(start), {{"points", points_json(points)}});
  }
}

void p1_detmap(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const auto pair = config_pair(c, false);
  const Field& field = pair.field;
  report.record("pair", pair_description(pair), true, 0.0);

  const auto start = Clock::now();
  const std::size_t rank = det_map_rank(pair);
  const std::size_t expected = static_cast<std::size_t>(pair.det_degree()) + 1;
  report.record("rank", {{"rank", rank}, {"expected", expected}}, rank == expected, seconds_since(start));

  const auto t0 = Clock::now();
  const int samples = static_cast<int>(binomial(pair.section_count(), pair.r));
  const std::size_t span = span_dimension(pair, samples, c.seed);
  report.record("span", {{"span", span}, {"rank", rank}, {"samples", samples}}, span == rank, seconds_since(t0));

  const bool generated_twice = std::all_of(pair.splitting.begin(), pair.splitting.end(), [](int d) { return d >= 1; });
  for (int i = 0; i < c.trials; ++i) {
    const auto t1 = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    const auto points = sample_points(field, 2, rng, true);
    const bool surjective = two_point_surjectivity(pair, points[0], points[1]);
    report.record("two-point", {{"sample", i}, {"surjective", surjective}, {"expected", generated_twice}},
                  surjective == generated_twice, seconds_since(t1), {{"points", points_json(points)}});
  }
}

void p1_lambda(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const auto pair = config_pair(c, false);
  const Field& field = pair.field;
  report.record("pair", pair_description(pair), true, 0.0);

  for (int i = 0; i < c.trials; ++i) {
    const auto start = Clock::now();
    Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(i));
    const auto x = sample_points(field, 1, rng, true).front();
    const auto image = lambda_image(pair, evaluation_functional(pair, x));
    const auto direct = classify_point(pair, x);
    report.record("evaluation", {{"sample", i}, {"exact", image == direct}}, image.projectively_equal(direct),
                  seconds_since(start), {{"points", points_json(std::vector<P1Point>{x})}});
  }
  if (pair.r >= 2) {
    // Generic functionals are not evaluations; their images leave the Grassmannian.
    const auto start = Clock::now();
    std::size_t off = 0;
    for (int i = 0; i < c.trials; ++i) {
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
      std::vector<FieldElement> f;
      for (int a = 0; a <= pair.det_degree(); ++a) f.push_back(sample_scalar(field, rng));
      if (!is_decomposable(lambda_image(pair, f))) ++off;
    }
    report.record("generic-functional", {{"indecomposable_images", off}, {"trials", c.trials}}, off > 0,
                  seconds_since(start));
  }
}

void p1_no_form(const ExperimentConfig& c, Report& report) {
  require_shape(c, 2);
  const auto pair = config_pair(c, true);
  const Field& field = pair.field;
  report.record("pair", pair_description(pair), true, 0.0);

  const auto start = Clock::now();
  const bool has_form = has_plucker_form(pair, c.trials, c.seed);
  const auto bound = plucker_form_failure_bound(pair, c.trials);
  nlohmann::json detail{{"has_form", has_form}, {"balanced", pair.is_balanced()}};
  detail["failure_bound"] = bound ? nlohmann::json(*bound) : nlohmann::json();
  report.record("existence", std::move(detail), has_form == pair.is_balanced(), seconds_since(start),
                pair_description(pair));

  if (!pair.is_balanced()) {
    for (int i = 0; i < c.trials; ++i) {
      const auto t0 = Clock::now();
      Rng rng = Rng::derived(c.seed, static_cast<std::uint64_t>(c.trials + i));
      const auto points = sample_points(field, c.m, rng, true);
      const FieldElement det = divisor_value(pair, points);
      report.record("vanishing", {{"sample", i}, {"det", det.to_string()}}, det.is_zero(), seconds_since(t0),
                    {{"points", points_json(points)}});
    }
  }

  const auto t1 = Clock::now();
  const auto balanced = make_pair(std::vector<int>(static_cast<std::size_t>(c.r), c.m - 1), c.m, field);
  const bool control = has_plucker_form(balanced, c.trials, c.seed);
  report.record("balanced-control", {{"has_form", control}}, control, seconds_since(t1));
}

struct Suite {
  std::string statement;
  std::function<void(const ExperimentConfig&, Report&)> body;
};

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table{
      {"taylor-check", {"coefficients of the form along w + eps*t equal the polars", taylor_check}},
      {"expand-check", {"shuffle expansion has (rm)!/(r!)^m terms and sums to the form", expand_check}},
      {"multiplicity-bound", {"no point of the form's hypersurface has multiplicity m or more", multiplicity_bound}},
      {"theorem31", {"Grassmannian membership from diagonal multiplicity and tangent codimension", theorem31}},
      {"lemma33", {"tangent codimension at decomposable diagonal points equals the threshold", lemma33}},
      {"prop32", {"rank of wedge-with-w is at least C(d-r, s) with equality iff decomposable", prop32}},
      {"thm38", {"stacked-basis determinant vanishes iff the form does on decomposable tuples", thm38}},
      {"p1-divisor", {"evaluation determinant is c times the r-th power of the diagonal", p1_divisor}},
      {"p1-detmap", {"determinant map is onto, classifying span matches, two-point generation", p1_detmap}},
      {"p1-lambda", {"dual determinant map sends evaluations to classifying points", p1_lambda}},
      {"p1-no-form", {"unbalanced pairs have identically vanishing evaluation determinant", p1_no_form}},
  };
  return table;
}

}  // namespace

Field ExperimentConfig::make_field() const {
  if (field == "q") return Field::rationals();
  if (field == "fp") return Field::prime(prime);
  throw MalformedInput("unknown field tag: " + field);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"command", command}, {"r", r},           {"m", m},         {"field", field},
                   {"seed", seed},       {"trials", trials}, {"format", format}};
  if (field == "fp") j["prime"] = prime;
  if (!splitting.empty()) j["splitting"] = splitting;
  return j;
}

Report::Report(ExperimentConfig config, std::string statement)
    : config_(std::move(config)), statement_(std::move(statement)) {}

void Report::record(std::string kind, nlohmann::json detail, bool passed, double elapsed_s,
                    const nlohmann::json& input) {
  detail["case"] = std::move(kind);
  detail["passed"] = passed;
  detail["elapsed_s"] = elapsed_s;
  if (passed) {
    ++passes_;
  } else {
    ++failures_;
    nlohmann::json counterexample{{"case_index", cases_.size()}, {"input", input}};
    counterexamples_.push_back(std::move(counterexample));
  }
  if (config_.verbosity > 0) {
    std::cerr << config_.command << " " << detail.at("case").get<std::string>() << " "
              << (passed ? "pass" : "FAIL") << "\n";
  }
  cases_.push_back(std::move(detail));
}

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : cases_) {
    auto copy = c;
    if (!include_timing) copy.erase("elapsed_s");
    cases.push_back(std::move(copy));
  }
  nlohmann::json j{{"schema", 1},
                   {"command", config_.command},
                   {"statement", statement_},
                   {"config", config_.to_json()},
                   {"cases", std::move(cases)},
                   {"summary",
                    {{"passes", passes_}, {"failures", failures_}, {"counterexamples", counterexamples_}}}};
  if (include_timing) j["wall_time_s"] = wall_time_s_;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "command,r,m,field,prime,seed,trials,passes,failures,counterexamples,wall_time_s\n";
  out << config_.command << ',' << config_.r << ',' << config_.m << ',' << config_.field << ','
      << (config_.field == "fp" ? std::to_string(config_.prime) : std::string()) << ',' << config_.seed << ','
      << config_.trials << ',' << passes_ << ',' << failures_ << ',' << counterexamples_.size() << ','
      << wall_time_s_ << '\n';
  return out.str();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, suite] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

Report run(const ExperimentConfig& config) {
  const auto it = suites().find(config.command);
  if (it == suites().end()) throw UnsupportedError("unknown command: " + config.command);
  const auto start = Clock::now();
  Report report(config, it->second.statement);
  it->second.body(config, report);
  report.set_wall_time(seconds_since(start));
  return report;
}

void write_report(const Report& report) {
  const auto& config = report.config();
  std::string body;
  if (config.format == "json") {
    body = report.to_json().dump(2) + "\n";
  } else if (config.format == "csv") {
    body = report.to_csv();
  } else {
    throw MalformedInput("unknown report format: " + config.format);
  }
  if (config.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream file(config.out);
  if (!file) throw Error("cannot open report path " + config.out);
  file << body;
}

}  // namespace plueckerlab
