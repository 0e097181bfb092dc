// Copyright 2026 The capra-l0 Authors
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

#include "oracle.hpp"
#include "test_util.hpp"

#include <capra/io.hpp>
#include <capra/monotonicity.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

using capra::KNormFamily;
using capra::MonotoneProperty;
using capra::SourceNorm;
using capra::Vector;
using capra::Verdict;
using testutil::vec;

TEST(OrthantMonotonic, LpPasses) {
  for (const SourceNorm& n : {SourceNorm::lp(2.0), SourceNorm::linf(), SourceNorm::lp(1.0)}) {
    const capra::MonotonicityReport r = capra::check_orthant_monotonic(n, 3, 500, 1);
    EXPECT_EQ(r.verdict, Verdict::passes);
    EXPECT_EQ(r.property, MonotoneProperty::om);
  }
}

TEST(OrthantMonotonic, SkewNormIsRefutedWithRecheckedWitness) {
  const SourceNorm skew = capra::skew_norm();
  const capra::MonotonicityReport r = capra::check_orthant_monotonic(skew, 2, 2000, 3);
  ASSERT_EQ(r.verdict, Verdict::fails);
  ASSERT_TRUE(r.counterexample.has_value());
  const auto& [x, xp] = *r.counterexample;
  EXPECT_TRUE(capra::recheck_counterexample(skew, MonotoneProperty::om, x, xp));
  for (int i = 0; i < 2; ++i) {
    EXPECT_LE(std::abs(x[i]), std::abs(xp[i]));
    EXPECT_GE(x[i] * xp[i], 0.0);
  }
  EXPECT_GT(capra::norm(skew, x), capra::norm(skew, xp));
}

TEST(OrthantMonotonic, SkewHandPickedPairRefutes) {
  // (0, 1) has norm 2, (1, 1) has norm 1.
  EXPECT_TRUE(capra::recheck_counterexample(capra::skew_norm(), MonotoneProperty::om, vec({0, 1}), vec({1, 1})));
  EXPECT_FALSE(capra::recheck_counterexample(capra::skew_norm(), MonotoneProperty::om, vec({1, 0}), vec({1, 1})));
}

TEST(OrthantStrictlyMonotonic, LpClassification) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const capra::MonotonicityReport r = capra::check_orthant_strictly_monotonic(SourceNorm::lp(p), 4, 200, 1);
    EXPECT_EQ(r.verdict, Verdict::passes) << p;
  }
}

TEST(OrthantStrictlyMonotonic, LinfFailsWithCanonicalWitness) {
  const capra::MonotonicityReport r = capra::check_orthant_strictly_monotonic(SourceNorm::linf(), 2, 100, 1);
  ASSERT_EQ(r.verdict, Verdict::fails);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->first, vec({1, 0}));
  EXPECT_EQ(r.counterexample->second, vec({1, 1}));
  EXPECT_TRUE(capra::recheck_counterexample(SourceNorm::linf(), MonotoneProperty::osm, vec({1, 0}), vec({1, 1})));
}

TEST(OrthantStrictlyMonotonic, SampledCustomL3Passes) {
  capra::CustomNorm c;
  c.name = "l3";
  c.eval = [](const Vector& x) { return oracle::lp(x, 3.0); };
  const capra::MonotonicityReport r =
      capra::check_orthant_strictly_monotonic(SourceNorm::custom(c), 3, 2000, 9);
  EXPECT_EQ(r.verdict, Verdict::passes);
  EXPECT_FALSE(r.analytic);
  EXPECT_EQ(r.samples_used, 2000);
}

TEST(OrthantStrictlyMonotonic, SampledCustomMaxFails) {
  capra::CustomNorm c;
  c.name = "max";
  c.eval = [](const Vector& x) { return x.cwiseAbs().maxCoeff(); };
  const capra::MonotonicityReport r = capra::check_orthant_strictly_monotonic(SourceNorm::custom(c), 3, 2000, 9);
  ASSERT_EQ(r.verdict, Verdict::fails);
  EXPECT_TRUE(capra::recheck_counterexample(SourceNorm::custom(c), MonotoneProperty::osm, r.counterexample->first,
                                            r.counterexample->second));
  // The same sampler never refutes the weaker property here.
  EXPECT_EQ(capra::check_orthant_monotonic(SourceNorm::custom(c), 3, 2000, 9).verdict, Verdict::passes);
}

TEST(DualPartner, Examples) {
  const Vector v2 = capra::support_preserving_dual_pair(SourceNorm::lp(2.0), vec({3, 4, 0}));
  EXPECT_NEAR(v2[0] / 3.0, v2[1] / 4.0, 1e-12);
  EXPECT_GT(v2[0], 0.0);
  EXPECT_EQ(v2[2], 0.0);

  const Vector v1 = capra::support_preserving_dual_pair(SourceNorm::lp(1.0), vec({3, -7, 0}));
  EXPECT_NEAR(v1[0], -v1[1], 1e-12);
  EXPECT_GT(v1[0], 0.0);
  EXPECT_EQ(v1[2], 0.0);
  EXPECT_NEAR(vec({3, -7, 0}).dot(v1), 10.0 * v1.cwiseAbs().maxCoeff(), 1e-12);

  const Vector v3 = capra::support_preserving_dual_pair(SourceNorm::lp(3.0), vec({1, 2, 0}));
  EXPECT_NEAR(v3[1] / v3[0], 4.0, 1e-12);
  EXPECT_EQ(v3[2], 0.0);
  EXPECT_NEAR(vec({1, 2, 0}).dot(v3), oracle::lp(vec({1, 2, 0}), 3.0) * oracle::lp(v3, 1.5), 1e-12);
}

TEST(DualPartner, RandomSupportsAndSigns) {
  testutil::Rng rng(31);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (int t = 0; t < 30; ++t) {
      const Vector u = rng.sparse(5, rng.integer(1, 5));
      const Vector v = capra::support_preserving_dual_pair(SourceNorm::lp(p), u);
      EXPECT_EQ(capra::IndexSet::support(v), capra::IndexSet::support(u));
      EXPECT_GE(u.cwiseProduct(v).minCoeff(), 0.0);
    }
  }
}

TEST(DualPartner, LinfCannotPreserveSupport) {
  EXPECT_THROW(capra::support_preserving_dual_pair(SourceNorm::linf(), vec({3, 1, 0})), capra::ConstructionError);
  EXPECT_THROW(capra::support_preserving_dual_pair(SourceNorm::lp(2.0), vec({0, 0})), capra::ArgumentError);
}

TEST(StrictChain, L2Example) {
  const capra::StrictChainReport r = capra::strict_chain_check(KNormFamily(SourceNorm::lp(2.0), 3), vec({3, 4, 0}));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.level, 2);
  ASSERT_EQ(r.chain.size(), 4u);
  EXPECT_NEAR(r.chain[1], 4.0, 1e-15);
  EXPECT_NEAR(r.chain[2], 5.0, 1e-15);
  EXPECT_NEAR(r.chain[3], 5.0, 1e-15);
  EXPECT_NEAR(r.min_strict_gap, 1.0, 1e-15);
}

TEST(StrictChain, L2ExampleAgreesWithEnumeration) {
  EXPECT_DOUBLE_EQ(oracle::top_k_enumerate(2.0, vec({3, 4, 0}), 1), 4.0);
  EXPECT_DOUBLE_EQ(oracle::top_k_enumerate(2.0, vec({3, 4, 0}), 2), 5.0);
}

TEST(StrictChain, L1SourceFailsStrictness) {
  const capra::StrictChainReport r = capra::strict_chain_check(KNormFamily(SourceNorm::lp(1.0), 3), vec({5, 5, 0}));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failing_index, 1);
  EXPECT_DOUBLE_EQ(r.chain[1], 5.0);
  EXPECT_DOUBLE_EQ(r.chain[2], 5.0);
}

TEST(StrictChain, DenseL2IsFullyStrict) {
  testutil::Rng rng(32);
  const KNormFamily f(SourceNorm::lp(2.0), 5);
  for (int t = 0; t < 50; ++t) {
    const Vector y = rng.sparse(5, 5);
    const capra::StrictChainReport r = capra::strict_chain_check(f, y);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.level, 5);
    for (int k = 1; k <= 5; ++k) EXPECT_NEAR(r.chain[static_cast<std::size_t>(k)], oracle::top_k_enumerate(2.0, y, k), 1e-12);
  }
}

TEST(DualSource, LpDualIsConjugateExponent) {
  const SourceNorm d = capra::dual_as_source(SourceNorm::lp(3.0));
  EXPECT_TRUE(d.is_lp());
  EXPECT_DOUBLE_EQ(d.exponent().value(), 1.5);
  EXPECT_TRUE(capra::dual_as_source(SourceNorm::lp(1.0)).exponent().is_infinite());
}

TEST(VerifiedFamily, LpPassesThrough) {
  const KNormFamily f = capra::make_verified_family(SourceNorm::lp(2.0), 4);
  EXPECT_TRUE(f.osm_pair());
  EXPECT_FALSE(capra::make_verified_family(SourceNorm::linf(), 3).osm_pair());
}

TEST(VerifiedFamily, RefutedFlagIsRejected) {
  capra::CustomNorm c;
  c.name = "max";
  c.eval = [](const Vector& x) { return x.cwiseAbs().maxCoeff(); };
  c.dual = [](const Vector& y) { return y.cwiseAbs().sum(); };
  c.orthant_monotonic = true;
  c.orthant_strictly_monotonic = true;
  EXPECT_THROW(capra::make_verified_family(SourceNorm::custom(c), 3), capra::ConstructionError);
}

TEST(VerifiedFamily, NonNormIsRejected) {
  capra::CustomNorm c;
  c.name = "squared";
  c.eval = [](const Vector& x) { return x.squaredNorm(); };
  EXPECT_THROW(capra::make_verified_family(SourceNorm::custom(c), 3), capra::InvalidNormError);
}

TEST(VerifiedFamily, HonestCustomFlagsSurvive) {
  capra::CustomNorm c;
  c.name = "weighted-l2";
  c.eval = [](const Vector& x) { return std::sqrt(x[0] * x[0] + 4 * x[1] * x[1] + x[2] * x[2]); };
  c.dual = [](const Vector& y) { return std::sqrt(y[0] * y[0] + y[1] * y[1] / 4 + y[2] * y[2]); };
  c.orthant_monotonic = c.orthant_strictly_monotonic = c.dual_orthant_strictly_monotonic = true;
  EXPECT_TRUE(capra::make_verified_family(SourceNorm::custom(c), 3, 500).osm_pair());
}

}  // namespace
