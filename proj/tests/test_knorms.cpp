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

#include <capra/knorms.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

using capra::KNormFamily;
using capra::KPath;
using capra::SourceNorm;
using capra::Vector;
using testutil::vec;

KNormFamily family(double p, int d) {
  return KNormFamily(std::isinf(p) ? SourceNorm::linf() : SourceNorm::lp(p), d);
}

TEST(TopK, Examples) {
  EXPECT_DOUBLE_EQ(capra::top_k_dual_norm(family(1.0, 3), vec({2, -5, 1}), 2), 5.0);
  EXPECT_DOUBLE_EQ(capra::top_k_dual_norm(family(testutil::kInf, 3), vec({2, -5, 1}), 2), 7.0);
}

TEST(TopK, ExamplesAgreeWithEnumeration) {
  EXPECT_DOUBLE_EQ(oracle::top_k_enumerate(1.0, vec({2, -5, 1}), 2), 5.0);
  EXPECT_DOUBLE_EQ(oracle::top_k_enumerate(testutil::kInf, vec({2, -5, 1}), 2), 7.0);
}

TEST(TopK, FullLevelIsDualNorm) {
  testutil::Rng rng(21);
  for (double p : {1.0, 1.5, 2.0, 3.0, testutil::kInf}) {
    const KNormFamily f = family(p, 4);
    const Vector y = rng.dense(4);
    EXPECT_NEAR(capra::top_k_dual_norm(f, y, 4), capra::dual_norm(f.source(), y), 1e-12);
  }
}

TEST(TopK, ZeroLevelIsZero) { EXPECT_EQ(capra::top_k_dual_norm(family(2.0, 3), vec({1, 2, 3}), 0), 0.0); }

TEST(TopK, FastAndGenericPathsMatchEnumeration) {
  testutil::Rng rng(22);
  for (double p : {1.0, 1.5, 2.0, 3.0, testutil::kInf}) {
    for (int d = 1; d <= 6; ++d) {
      const KNormFamily f = family(p, d);
      const Vector y = rng.dense(d);
      for (int k = 0; k <= d; ++k) {
        const double ref = oracle::top_k_enumerate(p, y, k);
        EXPECT_NEAR(capra::top_k_dual_norm(f, y, k), ref, 1e-12 * (1 + ref));
        EXPECT_NEAR(capra::top_k_dual_norm(f, y, k, KPath::generic), ref, 1e-12 * (1 + ref));
      }
      const std::vector<double> chain = capra::top_k_chain(f, y);
      for (int k = 0; k <= d; ++k) EXPECT_NEAR(chain[static_cast<std::size_t>(k)], oracle::top_k_enumerate(p, y, k), 1e-12);
    }
  }
}

TEST(TopK, SupportAttainsValue) {
  const KNormFamily f = family(2.0, 4);
  const Vector y = vec({1, -4, 3, 0.5});
  const capra::TopKValue t = capra::top_k_dual_norm_support(f, y, 2);
  EXPECT_EQ(t.support, (capra::IndexSet{1, 2}));
  EXPECT_DOUBLE_EQ(t.value, 5.0);
}

TEST(TopK, AtomIsExposed) {
  testutil::Rng rng(23);
  for (double p : {1.0, 1.5, 2.0, testutil::kInf}) {
    const KNormFamily f = family(p, 5);
    const Vector y = rng.dense(5);
    for (int k = 1; k <= 5; ++k) {
      const Vector a = capra::top_k_atom(f, y, k);
      EXPECT_LE(capra::l0(a), k);
      EXPECT_NEAR(capra::norm(f.source(), a), 1.0, 1e-12);
      EXPECT_NEAR(a.dot(y), capra::top_k_dual_norm(f, y, k), 1e-12);
    }
  }
}

TEST(KSupport, Examples) {
  EXPECT_NEAR(capra::k_support_dual_norm(family(testutil::kInf, 3), vec({3, 1, 1}), 2), 3.0, 1e-12);
  EXPECT_NEAR(capra::k_support_dual_norm(family(2.0, 2), vec({3, 4}), 1), 7.0, 1e-12);
  EXPECT_NEAR(capra::k_support_dual_norm(family(1.0, 3), vec({3, -7, 1}), 2), 11.0, 1e-12);
}

TEST(KSupport, ExamplesOnGenericPath) {
  EXPECT_NEAR(capra::k_support_dual_norm(family(testutil::kInf, 3), vec({3, 1, 1}), 2, KPath::generic), 3.0, 1e-6);
  EXPECT_NEAR(capra::k_support_dual_norm(family(2.0, 2), vec({3, 4}), 1, KPath::generic), 7.0, 1e-6);
}

TEST(KSupport, ExamplesAgreeWithAtomGauge) {
  const oracle::GaugeResult g = oracle::gauge_atoms_oracle(family(testutil::kInf, 3), vec({3, 1, 1}), 2);
  ASSERT_TRUE(g.converged);
  EXPECT_NEAR(g.value, 3.0, 1e-8);
  const oracle::GaugeResult h = oracle::gauge_atoms_oracle(family(2.0, 2), vec({3, 4}), 1);
  ASSERT_TRUE(h.converged);
  EXPECT_NEAR(h.value, 7.0, 1e-8);
}

TEST(KSupport, SparseVectorGivesSourceNorm) {
  EXPECT_NEAR(capra::k_support_dual_norm(family(2.0, 3), vec({3, 4, 0}), 2), 5.0, 1e-12);
  EXPECT_NEAR(capra::k_support_dual_norm(family(2.0, 3), vec({3, 4, 0}), 2, KPath::generic), 5.0, 1e-6);
}

TEST(KSupport, ConventionAtZeroLevelAndZeroVector) {
  EXPECT_EQ(capra::k_support_dual_norm(family(2.0, 3), vec({0, 0, 0}), 2), 0.0);
  EXPECT_THROW(capra::k_support_dual_norm(family(2.0, 3), vec({1, 0, 0}), 0), capra::ArgumentError);
}

TEST(KSupport, GenericBracketIsCertified) {
  testutil::Rng rng(24);
  for (double p : {1.5, 2.0, 3.0}) {
    const KNormFamily f = family(p, 5);
    for (int t = 0; t < 5; ++t) {
      const Vector x = rng.dense(5);
      for (int k = 2; k <= 4; ++k) {
        const capra::KSupportValue v = capra::k_support_dual_norm_bracket(f, x, k, KPath::generic);
        EXPECT_LE(v.lower, v.upper);
        EXPECT_LE(v.upper - v.lower, 1e-6 * v.upper);
        // Upper bound: k-sparse blocks summing to x.
        Vector sum = Vector::Zero(5);
        double cost = 0.0;
        for (const Vector& b : v.blocks) {
          EXPECT_LE(capra::l0(b), k);
          sum += b;
          cost += oracle::lp(b, p);
        }
        EXPECT_NEAR((sum - x).cwiseAbs().maxCoeff(), 0.0, 1e-9);
        EXPECT_NEAR(cost, v.upper, 1e-9 * v.upper);
        // Lower bound: <x, y> / top_k(y) for the dual witness.
        const double tk = oracle::top_k_enumerate(p, v.dual_witness, k);
        EXPECT_NEAR(x.dot(v.dual_witness) / tk, v.lower, 1e-9 * v.upper);
      }
    }
  }
}

TEST(KSupport, TableIdentities) {
  testutil::Rng rng(25);
  for (int d = 3; d <= 5; ++d) {
    for (int t = 0; t < 10; ++t) {
      const Vector x = rng.dense(d);
      for (int k = 1; k <= d; ++k) {
        EXPECT_NEAR(capra::k_support_dual_norm(family(1.0, d), x, k), x.cwiseAbs().sum(), 1e-9);
        const double linf = std::max(x.cwiseAbs().sum() / k, x.cwiseAbs().maxCoeff());
        EXPECT_NEAR(capra::k_support_dual_norm(family(testutil::kInf, d), x, k), linf, 1e-9);
      }
      EXPECT_NEAR(capra::k_support_dual_norm(family(3.0, d), x, 1), x.cwiseAbs().sum(), 1e-9);
    }
  }
}

TEST(KSupport, MatchesAtomGaugeOnRandomPoints) {
  testutil::Rng rng(26);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int t = 0; t < 3; ++t) {
      const int d = rng.integer(3, 4);
      const int k = rng.integer(2, d - 1);
      const Vector x = rng.dense(d);
      const oracle::GaugeResult g = oracle::gauge_atoms_oracle(family(p, d), x, k);
      ASSERT_TRUE(g.converged);
      EXPECT_NEAR(capra::k_support_dual_norm(family(p, d), x, k), g.value, 1e-6 * g.value);
    }
  }
}

TEST(KSupport, DecreasesInK) {
  testutil::Rng rng(27);
  const KNormFamily f = family(1.5, 4);
  const Vector x = rng.dense(4);
  for (int k = 1; k < 4; ++k) EXPECT_GE(capra::k_support_dual_norm(f, x, k) + 1e-9, capra::k_support_dual_norm(f, x, k + 1));
  EXPECT_NEAR(capra::k_support_dual_norm(f, x, 4), capra::norm(f.source(), x), 1e-12);
}

TEST(KSupport, CustomSourceUsesColumnGeneration) {
  capra::CustomNorm c;
  c.name = "l2-as-custom";
  c.eval = [](const Vector& x) { return x.norm(); };
  c.dual = [](const Vector& y) { return y.norm(); };
  c.orthant_monotonic = c.orthant_strictly_monotonic = c.dual_orthant_strictly_monotonic = true;
  const KNormFamily f(SourceNorm::custom(c), 3);
  const Vector x = vec({1.0, -2.0, 0.5});
  const capra::KSupportValue v = capra::k_support_dual_norm_bracket(f, x, 2);
  EXPECT_EQ(v.method, "columns");
  EXPECT_NEAR(v.value, capra::k_support_dual_norm(family(2.0, 3), x, 2), 1e-5);
}

TEST(Coordinate, Examples) {
  EXPECT_NEAR(capra::coordinate_k_dual_norm(family(2.0, 3), vec({2, -5, 1}), 2), std::sqrt(29.0), 1e-12);
  EXPECT_NEAR(oracle::top_k_enumerate(2.0, vec({2, -5, 1}), 2), std::sqrt(29.0), 1e-12);
  const Vector y = vec({2, -5, 1});
  EXPECT_NEAR(capra::coordinate_k_dual_norm(family(1.5, 3), y, 3), capra::dual_norm(SourceNorm::lp(1.5), y), 1e-12);
}

TEST(Coordinate, EqualsTopKForMonotonicSources) {
  testutil::Rng rng(28);
  for (double p : {1.0, 1.5, 2.0, testutil::kInf}) {
    const KNormFamily f = family(p, 4);
    for (int t = 0; t < 20; ++t) {
      const Vector y = rng.dense(4);
      for (int k = 1; k <= 4; ++k)
        EXPECT_NEAR(capra::coordinate_k_dual_norm(f, y, k), capra::top_k_dual_norm(f, y, k), 1e-12);
    }
  }
}

TEST(Nesting, L2HasNoViolation) {
  const capra::NestingReport r = capra::ball_nesting_check(family(2.0, 4), 1000, 5);
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.violation.has_value());
  EXPECT_LE(r.max_layer_residual, 1e-9);
}

TEST(Nesting, LinfHasNoViolation) {
  const capra::NestingReport r = capra::ball_nesting_check(family(testutil::kInf, 3), 300, 6);
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.max_layer_residual, 1e-9);
}

TEST(Family, RejectsWrongDimension) {
  EXPECT_THROW(capra::top_k_dual_norm(family(2.0, 3), vec({1, 2}), 1), capra::ArgumentError);
  EXPECT_THROW(KNormFamily(SourceNorm::lp(2.0), 0), capra::ArgumentError);
}

}  // namespace
