#include <random>

#include <gtest/gtest.h>

#include "isolab/families.hpp"
#include "isolab/nurowski.hpp"
#include "support.hpp"

namespace {

using namespace isolab;

constexpr AlgebraTag kTags[] = {AlgebraTag::R, AlgebraTag::C, AlgebraTag::H, AlgebraTag::O};

TEST(Upsilon, EntriesAreOneSixthOfThirdDerivatives) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly F = isolab::testing::random_poly(rng, 4, 3, 8);
    if (F.is_zero()) continue;
    const auto U = extract_upsilon(F);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
          const Poly d3 = F.differentiate(i).differentiate(j).differentiate(k);
          const ScalarQ3 expected = d3.coefficient(Monomial(4)) * ScalarQ3(make_rational(1, 6));
          EXPECT_EQ(U(i, j, k), expected);
        }
    EXPECT_EQ(U.contract(), F);
  }
}

TEST(Upsilon, PackedStorageHoldsOneEntryPerMultiset) {
  for (std::size_t n : {1u, 5u, 26u}) EXPECT_EQ(UpsilonTensor(n).stored_entries(), n * (n + 1) * (n + 2) / 6);
}

TEST(Upsilon, RequiresANonzeroCubic) {
  EXPECT_THROW(extract_upsilon(Poly::radial_power(3, 1)), PreconditionError);
  EXPECT_THROW(extract_upsilon(Poly(3)), PreconditionError);
}

TEST(Conditions, HoldForCartanCubicsInAllFourDimensions) {
  for (auto tag : kTags) {
    const auto U = extract_upsilon(cartan_cubic(tag).F);
    const auto r = check_conditions(U);
    EXPECT_EQ(static_cast<int>(r.dim), 3 * algebra_dim(tag) + 2);
    EXPECT_TRUE(r.symmetric);
    EXPECT_TRUE(r.trace_free) << algebra_name(tag);
    EXPECT_TRUE(r.quadratic_identity) << algebra_name(tag) << " failures " << r.tuple_failures;
    EXPECT_TRUE(trace_relation_holds(U));
    const std::size_t n = r.dim;
    EXPECT_EQ(r.tuples_checked, n * (n + 1) * (n + 2) * (n + 3) / 24);
  }
}

TEST(Conditions, HoldForTheDeterminantCubicAndItsExpansion) {
  EXPECT_TRUE(check_conditions(extract_upsilon(nurowski_det_cubic())).ok());
  EXPECT_TRUE(check_conditions(extract_upsilon(nurowski_expansion())).ok());
}

TEST(NegativeControl, ScaledTensorFailsOnlyTheQuadraticIdentity) {
  for (auto tag : {AlgebraTag::R, AlgebraTag::H}) {
    const auto U = extract_upsilon(cartan_cubic(tag).F).scaled(ScalarQ3(2));
    const auto r = check_conditions(U);
    EXPECT_TRUE(r.trace_free);
    EXPECT_FALSE(r.quadratic_identity);
    ASSERT_TRUE(r.first_counterexample.has_value());
    const auto& c = *r.first_counterexample;
    EXPECT_EQ(c.lhs, c.rhs * ScalarQ3(4));  // quadratic in Y
    EXPECT_FALSE(trace_relation_holds(U));
  }
}

TEST(NegativeControl, TraceFailuresNameTheIndex) {
  const std::size_t n = 5;
  Poly F = cartan_cubic(AlgebraTag::R).F;
  F += Poly::variable(n, 2) * Poly::squared_radius(n);  // adds a trace along x
  const auto r = check_conditions(extract_upsilon(F));
  EXPECT_FALSE(r.trace_free);
  EXPECT_EQ(r.trace_failures, (std::vector<std::size_t>{2}));
  EXPECT_FALSE(r.ok());
}

TEST(NegativeControl, GenericCubicFails) {
  std::mt19937_64 rng(66);
  const auto r = check_conditions(extract_upsilon(isolab::testing::random_poly(rng, 5, 3, 12)));
  EXPECT_FALSE(r.ok());
}

TEST(Catalog, DimensionsAreThreeKPlusTwo) {
  const auto& rows = dimension_catalog();
  ASSERT_EQ(rows.size(), 4u);
  const int ks[] = {1, 2, 4, 8};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].k, ks[i]);
    EXPECT_EQ(rows[i].n, 3 * ks[i] + 2);
  }
  EXPECT_EQ(catalog_entry_for_k(8)->group, "F4");
  EXPECT_FALSE(catalog_entry_for_k(3).has_value());
}

}  // namespace
