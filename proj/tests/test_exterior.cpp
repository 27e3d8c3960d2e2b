#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plueckerlab/exterior.hpp"

using namespace plueckerlab;

namespace {

const Field kFp = Field::prime();

ExteriorVector e(std::initializer_list<int> idx, int n, const Field& field = kFp) {
  return ExteriorVector::basis(MultiIndex::of(idx, n), field);
}

}  // namespace

TEST(MultiIndex, ConstructionAndErrors) {
  const auto i = MultiIndex::of({3, 1}, 5);
  EXPECT_EQ(i.indices(), (std::vector<int>{1, 3}));
  EXPECT_EQ(i.degree(), 2);
  EXPECT_EQ(MultiIndex::interval(2, 4, 6).indices(), (std::vector<int>{2, 3, 4}));
  EXPECT_THROW(MultiIndex::of({1, 1}, 5), MalformedInput);
  EXPECT_THROW(MultiIndex::of({6}, 5), DimensionError);
  EXPECT_TRUE(lex_less(MultiIndex::of({1, 4}, 5), MultiIndex::of({2, 3}, 5)));
  EXPECT_FALSE(lex_less(MultiIndex::of({2, 3}, 5), MultiIndex::of({1, 4}, 5)));
}

TEST(MergeSign, SpecCases) {
  EXPECT_EQ(merge_sign(MultiIndex::of({1, 2}, 4), MultiIndex::of({3, 4}, 4)), 1);
  EXPECT_EQ(merge_sign(MultiIndex::of({2}, 4), MultiIndex::of({1}, 4)), -1);
  EXPECT_EQ(merge_sign(MultiIndex::of({1, 3}, 4), MultiIndex::of({3}, 4)), 0);
}

TEST(MergeSign, AgreesWithInversionCountForAllPairs) {
  const int n = 7;
  for (Mask i = 0; i < (Mask{1} << n); ++i)
    for (Mask j = 0; j < (Mask{1} << n); ++j) ASSERT_EQ(merge_sign(i, j), oracle::concat_sign(i, j)) << i << " " << j;
}

TEST(BasisMasks, EnumerationAndRank) {
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto masks = basis_masks(n, k);
      ASSERT_EQ(masks.size(), binomial(n, k));
      for (std::size_t i = 0; i < masks.size(); ++i) {
        EXPECT_EQ(std::popcount(masks[i]), k);
        EXPECT_EQ(basis_rank(masks[i]), i);
        if (i > 0) EXPECT_LT(masks[i - 1], masks[i]);
      }
    }
  }
  EXPECT_EQ(basis_masks(64, 63).size(), 64u);
}

TEST(Wedge, SpecCases) {
  EXPECT_EQ(wedge(e({1, 2}, 6), e({3, 4}, 6)), e({1, 2, 3, 4}, 6));
  EXPECT_EQ(wedge(e({1, 3}, 4), e({2}, 4)), kFp.from_int(-1) * e({1, 2, 3}, 4));
  EXPECT_TRUE(wedge(e({1, 2}, 6), e({1, 3}, 6)).is_zero());
}

TEST(Wedge, ShapeErrors) {
  EXPECT_THROW(wedge(e({1, 2}, 4), e({1, 2}, 5)), DimensionError);
  EXPECT_THROW(wedge(e({1, 2, 3}, 4), e({1, 2}, 4)), DimensionError);
  EXPECT_THROW(wedge(e({1}, 4), e({2}, 4, Field::rationals())), MalformedInput);
}

TEST(Wedge, AgreesWithTermwiseOracle) {
  Rng rng(101);
  for (int i = 0; i < 30; ++i) {
    const auto u = random_exterior(8, 3, kFp, rng);
    const auto v = random_exterior(8, 2, kFp, rng);
    EXPECT_EQ(wedge(u, v), oracle::slow_wedge(u, v));
  }
}

TEST(Wedge, GradedAnticommutativeAssociativeBilinear) {
  for (const Field& field : {Field::rationals(), kFp}) {
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
      const int p = static_cast<int>(rng.uniform_int(1, 3));
      const int q = static_cast<int>(rng.uniform_int(1, 3));
      const auto u = random_exterior(8, p, field, rng);
      const auto v = random_exterior(8, q, field, rng);
      const auto w = random_exterior(8, 2, field, rng);
      const auto sign = field.from_int((p * q) % 2 ? -1 : 1);
      EXPECT_EQ(wedge(u, v), sign * wedge(v, u));
      EXPECT_EQ(wedge(wedge(u, v), w), wedge(u, wedge(v, w)));
      const auto a = sample_scalar(field, rng);
      const auto u2 = random_exterior(8, p, field, rng);
      EXPECT_EQ(wedge(a * u + u2, v), a * wedge(u, v) + wedge(u2, v));
    }
  }
}

TEST(Contract, SpecCasesAndConvention) {
  EXPECT_EQ(contract(MultiIndex::of({1}, 2), e({1, 2}, 2)), e({2}, 2));
  EXPECT_EQ(contract(MultiIndex::of({2}, 2), e({1, 2}, 2)), kFp.from_int(-1) * e({1}, 2));
  EXPECT_TRUE(contract(MultiIndex::of({3}, 3), e({1, 2}, 3)).is_zero());
  // e_phi ^ contract(phi, e_I) = e_I for every phi inside I.
  const int n = 6;
  for (Mask i : basis_masks(n, 3)) {
    for (Mask phi : basis_masks(n, 2)) {
      if ((phi & i) != phi) continue;
      const auto c = contract(MultiIndex(phi, n), ExteriorVector::basis(MultiIndex(i, n), kFp));
      EXPECT_EQ(wedge(ExteriorVector::basis(MultiIndex(phi, n), kFp), c),
                ExteriorVector::basis(MultiIndex(i, n), kFp));
    }
  }
}

TEST(PluckerRelations, SpecCases) {
  EXPECT_TRUE(plucker_relations_hold(e({1, 2}, 6)));
  EXPECT_FALSE(plucker_relations_hold(e({1, 2}, 6) + e({3, 4}, 6)));
  EXPECT_TRUE(plucker_relations_hold(e({1, 2}, 6) + e({1, 3}, 6)));
  EXPECT_THROW(plucker_relations_hold(ExteriorVector(6, 2, kFp)), PreconditionError);
}

TEST(PluckerRelations, ProductsOfVectorsSatisfyThem) {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    auto w = random_exterior(7, 1, kFp, rng);
    for (int k = 1; k < 3; ++k) w = wedge(w, random_exterior(7, 1, kFp, rng));
    if (!w.is_zero()) EXPECT_TRUE(plucker_relations_hold(w));
  }
}

TEST(RandomExterior, ShapeDeterminismAndErrors) {
  Rng a(5), b(5);
  const auto u = random_exterior(6, 2, kFp, a);
  EXPECT_EQ(u.terms().size(), 15u);
  EXPECT_EQ(u, random_exterior(6, 2, kFp, b));
  EXPECT_THROW(random_exterior(4, 5, kFp, a), DimensionError);
}

TEST(ExteriorVector, NormalizationAndProjectiveEquality) {
  Rng rng(3);
  const auto u = random_exterior(6, 2, kFp, rng);
  const auto n = u.normalized();
  EXPECT_TRUE(n.coefficient(n.leading_mask()).is_one());
  EXPECT_TRUE(u.projectively_equal(kFp.from_int(5) * u));
  EXPECT_FALSE(u.projectively_equal(random_exterior(6, 2, kFp, rng)));
  EXPECT_EQ(e({2, 3}, 4).leading_mask(), MultiIndex::of({2, 3}, 4).mask());
  // Lex order, not numeric: {1,4} precedes {2,3}.
  EXPECT_EQ((e({2, 3}, 4) + e({1, 4}, 4)).leading_mask(), MultiIndex::of({1, 4}, 4).mask());
}

TEST(ExteriorJson, RoundTripAndMalformedInput) {
  for (const Field& field : {Field::rationals(), kFp}) {
    Rng rng(19);
    const auto u = random_exterior(7, 3, field, rng);
    EXPECT_EQ(exterior_from_json(to_json(u)), u);
  }
  EXPECT_THROW(exterior_from_json(nlohmann::json::parse(R"({"n": 4})")), MalformedInput);
  EXPECT_THROW(exterior_from_json(nlohmann::json::parse(
                   R"({"n": 4, "degree": 2, "field": "q", "terms": [[[1, 2, 3], "1"]]})")),
               MalformedInput);
  EXPECT_THROW(exterior_from_json(nlohmann::json::parse(
                   R"({"n": 4, "degree": 2, "field": "z", "terms": []})")),
               MalformedInput);
}
