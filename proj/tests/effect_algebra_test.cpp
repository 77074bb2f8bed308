// Copyright 2026 The Gleason Frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gleason/effect_algebra.hpp"

namespace gleason {
namespace {

const double kSqrt2 = std::sqrt(2.0);

HermitianOperator ket0() { return HermitianOperator::diagonal({1.0, 0.0}); }
HermitianOperator plus() {
  VectorXc v(2);
  v << 1.0, 1.0;
  return HermitianOperator::projector(v);
}

TEST(IsEffect, Examples) {
  for (int d = 2; d <= 4; ++d) EXPECT_TRUE(is_effect(HermitianOperator::identity(d)).ok);
  const auto big = is_effect(1.5 * ket0());
  EXPECT_FALSE(big.ok);
  EXPECT_NEAR(big.witness, 1.5, 1e-15);
  EXPECT_TRUE(is_effect(HermitianOperator::diagonal({0.3, 0.9})).ok);
  const auto neg = is_effect(HermitianOperator::diagonal({-0.1, 0.5}));
  EXPECT_FALSE(neg.ok);
  EXPECT_NEAR(neg.witness, -0.1, 1e-15);
}

TEST(IsEffect, SlackAtBoundary) {
  EXPECT_TRUE(is_effect(HermitianOperator::diagonal({1.0 + 5e-10, -5e-10})).ok);
  EXPECT_FALSE(is_effect(HermitianOperator::diagonal({1.0 + 5e-9, 0.0})).ok);
}

TEST(Effect, CreateThrowsWithWitness) {
  try {
    Effect::create(1.5 * ket0());
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.name(), "effect");
    EXPECT_NEAR(e.witness(), 1.5, 1e-15);
  }
}

TEST(Coexists, Examples) {
  const auto half = Effect::create(HermitianOperator::identity(2) * 0.5);
  EXPECT_TRUE(coexists(half, half));
  const auto p0 = Effect::create(ket0());
  EXPECT_FALSE(coexists(p0, p0));
}

// |0><0| + |+><+| = [[3/2, 1/2], [1/2, 1/2]] has eigenvalues 1 +- 1/sqrt2, so
// s|0><0| + s|+><+| is an effect iff s (1 + 1/sqrt2) <= 1, i.e. s <= 0.5858.
TEST(Coexists, ScaledZeroAndPlus) {
  const double top = 1.0 + 1.0 / kSqrt2;
  EXPECT_NEAR(max_eigenvalue(0.6 * ket0() + 0.6 * plus()), 0.6 * top, 1e-14);
  EXPECT_NEAR(0.6 * top, 1.0242640687, 1e-9);
  EXPECT_FALSE(coexists(Effect::create(0.6 * ket0()), Effect::create(0.6 * plus())));
  EXPECT_NEAR(max_eigenvalue(0.55 * ket0() + 0.55 * plus()), 0.55 * top, 1e-14);
  EXPECT_TRUE(coexists(Effect::create(0.55 * ket0()), Effect::create(0.55 * plus())));
}

TEST(Coexists, DimensionMismatch) {
  EXPECT_THROW(coexists(Effect::create(HermitianOperator::identity(2) * 0.5),
                        Effect::create(HermitianOperator::identity(3) * 0.5)),
               DimensionMismatch);
}

TEST(MaxScale, Examples) {
  EXPECT_NEAR(max_scale(Effect::create(HermitianOperator::identity(2))), 1.0, 1e-15);
  const double gamma = 2.0 + 1.0 / kSqrt2;
  EXPECT_NEAR(max_scale(Effect::create(ket0() / gamma)), gamma, 1e-13);
  EXPECT_NEAR(max_scale(Effect::create(HermitianOperator::diagonal({0.5, 0.25}))), 2.0, 1e-15);
  EXPECT_THROW(max_scale(Effect::create(HermitianOperator::zero(2))), InvariantViolation);
}

TEST(MaxScale, ScaledEffectTouchesOne) {
  Rng rng = make_rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto e = random_effect(3, rng);
    const double a = max_scale(e);
    EXPECT_GE(a, 1.0 - 1e-12);
    EXPECT_NEAR(max_eigenvalue(a * e.op()), 1.0, 1e-12);
  }
}

TEST(PomReport, ViolationsInOrder) {
  EXPECT_EQ(pom_report({HermitianOperator::identity(2)}).violated, "size");
  EXPECT_EQ(pom_report({ket0(), HermitianOperator::identity(3)}).violated, "dimension");
  const auto eff = pom_report({1.5 * ket0(), HermitianOperator::diagonal({-0.5, 1.0})});
  EXPECT_EQ(eff.violated, "effect");
  EXPECT_EQ(eff.index, 0);
  const auto sum = pom_report({HermitianOperator::identity(2) * 0.6, HermitianOperator::identity(2) * 0.5});
  EXPECT_EQ(sum.violated, "sum-to-identity");
  EXPECT_NEAR(sum.witness, 0.1 * kSqrt2, 1e-14);
  const auto ok = pom_report({ket0(), HermitianOperator::diagonal({0.0, 1.0})});
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.rank, 2);
  EXPECT_EQ(pom_report({ket0(), HermitianOperator::diagonal({0.0, 1.0})}, {}, true).violated,
            "linear-independence");
}

TEST(Pom, CreateRejectsAndAccepts) {
  EXPECT_THROW(Pom::create({ket0(), ket0()}), InvariantViolation);
  const auto p = Pom::create({ket0(), HermitianOperator::identity(2) - ket0()});
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.dim(), 2);
}

TEST(SicMicPom, SumsToIdentityWithFullRank) {
  const auto m = sic_mic_pom();
  ASSERT_EQ(m.effects().size(), 4u);
  HermitianOperator sum = HermitianOperator::zero(2);
  for (const auto& e : m.effects()) {
    sum += e;
    EXPECT_NEAR(e.trace(), 0.5, 1e-15);
    EXPECT_NEAR(max_eigenvalue(e), 0.5, 1e-14);  // (I + s.sigma)/4 with |s| = 1
  }
  EXPECT_LT(hs_distance(sum, HermitianOperator::identity(2)), 1e-15);
  EXPECT_EQ(m.basis().rank(), 4);
  // Symmetric: Tr(M_j M_k) = (1 + s_j . s_k)/8 = (1 - 1/3)/8 = 1/12 off the diagonal.
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      EXPECT_NEAR(hs_inner(m.effects()[j], m.effects()[k]), j == k ? 0.25 : 1.0 / 12.0, 1e-15);
}

TEST(SicMicPom, HalfIdentityCoordinates) {
  const auto c = sic_mic_pom().basis().expand(HermitianOperator::identity(2) * 0.5);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(c(j), 0.5, 1e-14);
}

TEST(RandomMicPom, DimThreeSeedSeven) {
  const auto m = random_mic_pom(3, 7);
  ASSERT_EQ(m.effects().size(), 9u);
  HermitianOperator sum = HermitianOperator::zero(3);
  for (const auto& e : m.effects()) {
    sum += e;
    EXPECT_TRUE(is_effect(e).ok);
  }
  EXPECT_LT(hs_distance(sum, HermitianOperator::identity(3)), 1e-10);
  EXPECT_EQ(m.basis().rank(), 9);
}

TEST(RandomMicPom, Deterministic) {
  for (int d = 2; d <= 4; ++d) {
    const auto a = random_mic_pom(d, 42);
    const auto b = random_mic_pom(d, 42);
    for (std::size_t j = 0; j < a.effects().size(); ++j)
      EXPECT_TRUE(a.effects()[j].matrix() == b.effects()[j].matrix());
  }
  EXPECT_FALSE(random_mic_pom(2, 1).effects()[0].matrix() == random_mic_pom(2, 2).effects()[0].matrix());
}

TEST(RandomMicPom, ValidAcrossSeeds) {
  for (int d = 2; d <= 5; ++d)
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto m = random_mic_pom(d, s);
      EXPECT_TRUE(pom_report(m.effects(), {}, true).ok) << "d=" << d << " seed=" << s;
    }
}

TEST(DensityOperator, Validation) {
  EXPECT_NO_THROW(DensityOperator::create(ket0()));
  try {
    DensityOperator::create(HermitianOperator::diagonal({1.2, -0.2}));
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.name(), "positive");
  }
  try {
    DensityOperator::create(HermitianOperator::diagonal({0.5, 0.4}));
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.name(), "unit-trace");
  }
}

TEST(RandomDensity, UnitTracePositive) {
  Rng rng = make_rng(1);
  for (int d = 2; d <= 5; ++d)
    for (int t = 0; t < 10; ++t) {
      const auto r = random_density(d, rng);
      EXPECT_NEAR(r.op().trace(), 1.0, 1e-14);
      EXPECT_GE(min_eigenvalue(r.op()), -1e-14);
    }
}

TEST(RandomEffect, InsideUnitInterval) {
  Rng rng = make_rng(2);
  for (int d = 2; d <= 5; ++d)
    for (int t = 0; t < 20; ++t) {
      const auto e = random_effect(d, rng);
      const auto chk = is_effect(e.op());
      EXPECT_TRUE(chk.ok);
      EXPECT_GE(chk.min_eigenvalue, -1e-12);
      EXPECT_LE(chk.max_eigenvalue, 1.0 + 1e-12);
    }
}

}  // namespace
}  // namespace gleason
