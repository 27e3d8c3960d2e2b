#include "plueckerlab/scalars.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace plueckerlab {

// ---------------------------------------------------------------------------
// Rng

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::derived(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return Rng((static_cast<std::uint64_t>(words[1]) << 32) | words[0]);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("uniform_below: bound must be positive");
  // Largest multiple of bound representable, minus one.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw > limit);
  return draw % bound;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw PreconditionError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(uniform_below(span));
}

// ---------------------------------------------------------------------------
// Modular helpers

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exponent >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint64_t p) {
  if (p < kDefaultPrime || p >= (1ULL << 63)) {
    throw MalformedInput("prime modulus must lie in [2^31 - 1, 2^63), got " + std::to_string(p));
  }
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw MalformedInput("modulus is not prime: " + std::to_string(p));
  }
  return Field(FieldKind::Prime, p);
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long long value) const {
  if (is_rational()) return FieldElement(mpq_class(mpz_class(static_cast<long>(value))));
  const auto p = static_cast<long long>(modulus_);
  long long r = value % p;
  if (r < 0) r += p;
  return FieldElement(static_cast<std::uint64_t>(r), modulus_);
}

FieldElement Field::from_rational(const mpq_class& value) const {
  if (is_rational()) return FieldElement(value);
  mpz_class p;
  mpz_import(p.get_mpz_t(), 1, 1, sizeof(modulus_), 0, 0, &modulus_);
  mpz_class num = value.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = value.get_den() % p;
  if (den == 0) throw MalformedInput("rational with denominator divisible by p");
  const auto n = FieldElement(num.get_ui(), modulus_);
  const auto d = FieldElement(den.get_ui(), modulus_);
  return n / d;
}

std::string Field::describe() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(modulus_);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(mpq_class value) : repr_(std::move(value)) {
  std::get<mpq_class>(repr_).canonicalize();
}

FieldElement::FieldElement(std::uint64_t residue, std::uint64_t modulus)
    : repr_(Residue{residue % modulus, modulus}) {}

Field FieldElement::field() const {
  if (is_rational()) return Field::rationals();
  return Field(FieldKind::Prime, std::get<Residue>(repr_).modulus);
}

bool FieldElement::is_zero() const {
  if (is_rational()) return sgn(rational()) == 0;
  return residue() == 0;
}

bool FieldElement::is_one() const {
  if (is_rational()) return rational() == 1;
  return residue() == 1;
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (repr_.index() != other.repr_.index()) {
    throw MalformedInput("arithmetic between a rational and a residue");
  }
  if (!is_rational() &&
      std::get<Residue>(repr_).modulus != std::get<Residue>(other.repr_).modulus) {
    throw MalformedInput("arithmetic between residues of different moduli");
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  check_same_field(other);
  if (auto* q = std::get_if<mpq_class>(&repr_)) {
    *q += other.rational();
  } else {
    auto& r = std::get<Residue>(repr_);
    std::uint64_t sum = r.value + other.residue();
    if (sum >= r.modulus || sum < r.value) sum -= r.modulus;
    r.value = sum;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  check_same_field(other);
  if (auto* q = std::get_if<mpq_class>(&repr_)) {
    *q -= other.rational();
  } else {
    auto& r = std::get<Residue>(repr_);
    const std::uint64_t b = other.residue();
    r.value = r.value >= b ? r.value - b : r.value + (r.modulus - b);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  check_same_field(other);
  if (auto* q = std::get_if<mpq_class>(&repr_)) {
    *q *= other.rational();
  } else {
    auto& r = std::get<Residue>(repr_);
    r.value = mul_mod(r.value, other.residue(), r.modulus);
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  return *this *= other.inverse();
}

FieldElement FieldElement::operator-() const {
  if (is_rational()) return FieldElement(mpq_class(-rational()));
  const auto& r = std::get<Residue>(repr_);
  return FieldElement(r.value == 0 ? 0 : r.modulus - r.value, r.modulus);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  if (is_rational()) return FieldElement(mpq_class(1 / rational()));
  const auto& r = std::get<Residue>(repr_);
  return FieldElement(pow_mod(r.value, r.modulus - 2, r.modulus), r.modulus);
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result = field().one();
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.repr_.index() != b.repr_.index()) return false;
  if (a.is_rational()) return a.rational() == b.rational();
  return std::get<FieldElement::Residue>(a.repr_) == std::get<FieldElement::Residue>(b.repr_);
}

std::string FieldElement::to_string() const {
  if (is_rational()) {
    return rational().get_num().get_str() + "/" + rational().get_den().get_str();
  }
  return std::to_string(residue());
}

FieldElement FieldElement::parse(std::string_view text, const Field& field) {
  const std::string s(text);
  if (field.is_rational()) {
    mpq_class value;
    if (value.set_str(s, 10) != 0) throw MalformedInput("not a rational: " + s);
    if (value.get_den() == 0) throw MalformedInput("zero denominator: " + s);
    return FieldElement(value);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value >= field.modulus()) {
    throw MalformedInput("not a residue modulo " + std::to_string(field.modulus()) + ": " + s);
  }
  return FieldElement(value, field.modulus());
}

FieldElement sample_scalar(const Field& field, Rng& rng) {
  if (field.is_rational()) {
    const auto num = rng.uniform_int(-100, 100);
    const auto den = rng.uniform_int(1, 10);
    return FieldElement(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
  }
  return FieldElement(rng.uniform_below(field.modulus()), field.modulus());
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(field), entries_(rows * cols, field.zero()) {}

DenseMatrix DenseMatrix::identity(std::size_t size, const Field& field) {
  DenseMatrix m(size, size, field);
  for (std::size_t i = 0; i < size; ++i) m.at(i, i) = field.one();
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<FieldElement>>& rows,
                                   const Field& field) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(rows.size(), cols, field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw MalformedInput("ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  m.check_uniform_field();
  return m;
}

DenseMatrix DenseMatrix::random(std::size_t rows, std::size_t cols, const Field& field,
                                Rng& rng) {
  DenseMatrix m(rows, cols, field);
  for (auto& e : m.entries_) e = sample_scalar(field, rng);
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  if (!(a.field_ == b.field_)) throw MalformedInput("matrix product across fields");
  DenseMatrix c(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

void DenseMatrix::check_uniform_field() const {
  const bool rational = field_.is_rational();
  for (const auto& e : entries_) {
    if (e.is_rational() != rational || (!rational && e.modulus() != field_.modulus())) {
      throw MalformedInput("matrix entry from a different field than " + field_.describe());
    }
  }
}

namespace {

// Row-echelon elimination over F_p on a flat residue buffer. Returns the rank
// and, through det_sign, the parity of row swaps.
std::size_t eliminate_mod_p(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                            std::uint64_t p, std::vector<std::uint64_t>* pivots, bool* odd_swaps) {
  const bool small = p < (1ULL << 32);
  auto mul = [&](std::uint64_t x, std::uint64_t y) {
    return small ? (x * y) % p : mul_mod(x, y, p);
  };
  std::size_t rank = 0;
  bool odd = false;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
      odd = !odd;
    }
    const std::uint64_t* prow = &a[rank * cols];
    const std::uint64_t inv = pow_mod(prow[col], p - 2, p);
    if (pivots) pivots->push_back(prow[col]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t* row = &a[i * cols];
      if (row[col] == 0) continue;
      const std::uint64_t factor = mul(row[col], inv);
      const std::uint64_t neg = p - factor;
      for (std::size_t j = col; j < cols; ++j) {
        if (prow[j] == 0) continue;
        std::uint64_t v = row[j] + mul(neg, prow[j]);
        if (v >= p) v -= p;
        row[j] = v;
      }
    }
    ++rank;
  }
  if (odd_swaps) *odd_swaps = odd;
  return rank;
}

std::vector<std::uint64_t> residues(const DenseMatrix& m) {
  std::vector<std::uint64_t> a;
  a.reserve(m.entries().size());
  for (const auto& e : m.entries()) a.push_back(e.residue());
  return a;
}

// Clears denominators row by row; the row scalings are returned so callers
// that need the determinant can undo them.
std::vector<mpz_class> integer_rows(const DenseMatrix& m, std::vector<mpz_class>* scales) {
  std::vector<mpz_class> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).rational().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m.at(i, j).rational();
      a[i * m.cols() + j] = q.get_num() * (lcm / q.get_den());
    }
    if (scales) scales->push_back(lcm);
  }
  return a;
}

// Fraction-free elimination. After the call, the last pivot equals the
// determinant of the leading pivot block (up to the sign of row swaps).
std::size_t bareiss(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols,
                    mpz_class* last_pivot, bool* odd_swaps) {
  std::size_t rank = 0;
  bool odd = false;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
      odd = !odd;
    }
    const mpz_class& pv = a[rank * cols + col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      mpz_class& lead = a[i * cols + col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class& x = a[i * cols + j];
        x *= pv;
        t = lead * a[rank * cols + j];
        x -= t;
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      lead = 0;
    }
    prev = pv;
    ++rank;
  }
  if (last_pivot) *last_pivot = prev;
  if (odd_swaps) *odd_swaps = odd;
  return rank;
}

}  // namespace

std::size_t mat_rank(const DenseMatrix& matrix) {
  matrix.check_uniform_field();
  if (matrix.rows() == 0 || matrix.cols() == 0) return 0;
  if (matrix.field().is_rational()) {
    auto a = integer_rows(matrix, nullptr);
    return bareiss(a, matrix.rows(), matrix.cols(), nullptr, nullptr);
  }
  auto a = residues(matrix);
  return eliminate_mod_p(a, matrix.rows(), matrix.cols(), matrix.field().modulus(), nullptr,
                         nullptr);
}

FieldElement mat_det(const DenseMatrix& matrix) {
  matrix.check_uniform_field();
  if (matrix.rows() != matrix.cols()) throw DimensionError("determinant of a non-square matrix");
  const Field& field = matrix.field();
  const std::size_t n = matrix.rows();
  if (n == 0) return field.one();
  bool odd = false;
  if (field.is_rational()) {
    std::vector<mpz_class> scales;
    auto a = integer_rows(matrix, &scales);
    mpz_class last;
    if (bareiss(a, n, n, &last, &odd) < n) return field.zero();
    mpq_class det(last);
    for (const auto& s : scales) det /= s;
    if (odd) det = -det;
    return FieldElement(det);
  }
  auto a = residues(matrix);
  std::vector<std::uint64_t> pivots;
  if (eliminate_mod_p(a, n, n, field.modulus(), &pivots, &odd) < n) return field.zero();
  FieldElement det = field.one();
  for (auto p : pivots) det *= FieldElement(p, field.modulus());
  return odd ? -det : det;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace plueckerlab
