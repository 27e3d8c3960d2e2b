#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plueckerlab/scalars.hpp"

using namespace plueckerlab;

namespace {

std::vector<Field> both_fields() { return {Field::rationals(), Field::prime()}; }

DenseMatrix ints(const std::vector<std::vector<long long>>& rows, const Field& field) {
  std::vector<std::vector<FieldElement>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (long long v : row) out.back().push_back(field.from_int(v));
  }
  return DenseMatrix::from_rows(out, field);
}

}  // namespace

TEST(Field, PrimeRangeAndPrimality) {
  EXPECT_NO_THROW(Field::prime());
  EXPECT_EQ(Field::prime().modulus(), 2147483647ULL);
  EXPECT_THROW(Field::prime(2147483649ULL), MalformedInput);  // composite
  EXPECT_THROW(Field::prime(65537), MalformedInput);          // below range
  EXPECT_NO_THROW(Field::prime(4294967311ULL));               // first prime above 2^32
}

TEST(FieldElement, AxiomsOnRandomSamples) {
  for (const auto& field : both_fields()) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const auto a = sample_scalar(field, rng);
      const auto b = sample_scalar(field, rng);
      const auto c = sample_scalar(field, rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_TRUE((a - a).is_zero());
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    }
  }
}

TEST(FieldElement, LargeModulusUsesWideProducts) {
  const Field field = Field::prime(9223372036854775783ULL);  // largest prime below 2^63
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto a = sample_scalar(field, rng);
    if (a.is_zero()) continue;
    EXPECT_TRUE((a * a.inverse()).is_one());
    EXPECT_EQ(a.pow(field.modulus() - 1), field.one());  // Fermat
  }
}

TEST(FieldElement, TextRoundTrip) {
  for (const auto& field : both_fields()) {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      const auto a = sample_scalar(field, rng);
      EXPECT_EQ(FieldElement::parse(a.to_string(), field), a);
    }
  }
  EXPECT_THROW(FieldElement::parse("1/0", Field::rationals()), MalformedInput);
  EXPECT_THROW(FieldElement::parse("abc", Field::prime()), MalformedInput);
}

TEST(FieldElement, MixedFieldsAreRejected) {
  const auto q = Field::rationals().one();
  const auto p = Field::prime().one();
  EXPECT_THROW(q + p, MalformedInput);
  EXPECT_FALSE(q == p);
}

TEST(FieldElement, ZeroHasNoInverse) {
  for (const auto& field : both_fields()) EXPECT_THROW(field.zero().inverse(), PreconditionError);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c = Rng::derived(42, 0), d = Rng::derived(42, 1);
  EXPECT_NE(c.next(), d.next());
  const Field field = Field::prime();
  Rng e(7), f(7);
  EXPECT_EQ(sample_scalar(field, e), sample_scalar(field, f));
}

TEST(Rng, RationalSamplesStayInRange) {
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto a = sample_scalar(Field::rationals(), rng).rational();
    EXPECT_TRUE(abs(a.get_num()) <= 100);
    EXPECT_TRUE(a.get_den() <= 10);
  }
}

TEST(MatRank, SpecCases) {
  for (const auto& field : both_fields()) {
    EXPECT_EQ(mat_rank(DenseMatrix::identity(3, field)), 3u);
    EXPECT_EQ(mat_rank(DenseMatrix(4, 7, field)), 0u);
    EXPECT_EQ(mat_rank(ints({{1, 2}, {2, 4}}, field)), 1u);
  }
}

TEST(MatRank, MixedFieldEntriesRejected) {
  DenseMatrix a(2, 2, Field::rationals());
  a.at(0, 0) = Field::prime().one();
  EXPECT_THROW(mat_rank(a), MalformedInput);
}

TEST(MatRank, AgreesWithMinorOracle) {
  for (const auto& field : both_fields()) {
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
      // Low-rank products hit every rank between 0 and 3.
      const auto k = static_cast<std::size_t>(rng.uniform_int(0, 3));
      const auto a = DenseMatrix::random(4, k, field, rng) * DenseMatrix::random(k, 5, field, rng);
      const auto rank = mat_rank(a);
      EXPECT_EQ(rank, oracle::minor_rank(a));
      EXPECT_EQ(rank, mat_rank(a.transpose()));
    }
  }
}

TEST(MatRank, InvariantUnderInvertibleRowOperations) {
  for (const auto& field : both_fields()) {
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
      const auto a = DenseMatrix::random(5, 3, field, rng) * DenseMatrix::random(3, 6, field, rng);
      auto g = DenseMatrix::random(5, 5, field, rng);
      while (mat_det(g).is_zero()) g = DenseMatrix::random(5, 5, field, rng);
      EXPECT_EQ(mat_rank(g * a), mat_rank(a));
    }
  }
}

TEST(MatDet, AgreesWithLeibnizAndIsMultiplicative) {
  for (const auto& field : both_fields()) {
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
      const auto a = DenseMatrix::random(5, 5, field, rng);
      const auto b = DenseMatrix::random(5, 5, field, rng);
      EXPECT_EQ(mat_det(a), oracle::leibniz_det(a));
      EXPECT_EQ(mat_det(a * b), mat_det(a) * mat_det(b));
    }
    // Row swap flips the sign; hand value.
    EXPECT_EQ(mat_det(ints({{0, 1}, {1, 0}}, field)), field.from_int(-1));
    EXPECT_EQ(mat_det(ints({{1, 2}, {3, 4}}, field)), field.from_int(-2));
  }
}

TEST(MatDet, RationalEntriesWithDenominators) {
  const Field q = Field::rationals();
  const auto half = q.from_rational(mpq_class(1, 2));
  const auto third = q.from_rational(mpq_class(1, 3));
  const auto a = DenseMatrix::from_rows({{half, third}, {third, half}}, q);
  EXPECT_EQ(mat_det(a), q.from_rational(mpq_class(5, 36)));
}

TEST(Binomial, SmallValuesAndRange) {
  EXPECT_EQ(binomial(6, 2), 15u);
  EXPECT_EQ(binomial(12, 4), 495u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(5, -1), 0u);
}
