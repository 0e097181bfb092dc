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

#include "test_util.hpp"

#include <capra/io.hpp>

#include <gtest/gtest.h>

namespace {

using capra::Vector;
using testutil::vec;

TEST(ParseSource, Spellings) {
  EXPECT_DOUBLE_EQ(capra::parse_source("l1").exponent().value(), 1.0);
  EXPECT_DOUBLE_EQ(capra::parse_source("l2").exponent().value(), 2.0);
  EXPECT_TRUE(capra::parse_source("linf").exponent().is_infinite());
  EXPECT_TRUE(capra::parse_source("lp:inf").exponent().is_infinite());
  EXPECT_DOUBLE_EQ(capra::parse_source("lp:3/2").exponent().value(), 1.5);
  EXPECT_DOUBLE_EQ(capra::parse_source(" lp:2.5 ").exponent().value(), 2.5);
  EXPECT_FALSE(capra::parse_source("custom:skew").is_lp());
}

TEST(ParseSource, Rejects) {
  for (const char* bad : {"lp:0.5", "lp:", "lp:1/0", "l3", "lp:2x", "custom:other", ""})
    EXPECT_THROW(capra::parse_source(bad), capra::ArgumentError) << bad;
}

TEST(ParsePhi, Spellings) {
  EXPECT_EQ(capra::parse_phi("id", 3).values(), (std::vector<double>{0, 1, 2, 3}));
  EXPECT_EQ(capra::parse_phi("sq", 2).values(), (std::vector<double>{0, 1, 4}));
  EXPECT_EQ(capra::parse_phi("zero", 2).values(), (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(capra::parse_phi("table:0,1,1.5", 2).values(), (std::vector<double>{0, 1, 1.5}));
  EXPECT_THROW(capra::parse_phi("table:0,1", 2), capra::ArgumentError);
  EXPECT_THROW(capra::parse_phi("table:0,2,1", 2), capra::ArgumentError);
  EXPECT_THROW(capra::parse_phi("cube", 2), capra::ArgumentError);
}

TEST(ParseVector, Decimals) {
  EXPECT_EQ(capra::parse_vector("3,4,0"), vec({3, 4, 0}));
  EXPECT_EQ(capra::parse_vector(" -1.5 , 2e-3 "), vec({-1.5, 2e-3}));
  EXPECT_THROW(capra::parse_vector(""), capra::ArgumentError);
  EXPECT_THROW(capra::parse_vector("1,,2"), capra::ArgumentError);
  EXPECT_THROW(capra::parse_vector("1,inf"), capra::ArgumentError);
  EXPECT_THROW(capra::parse_vector("1;2"), capra::ArgumentError);
}

TEST(SkewNorm, Values) {
  const capra::SourceNorm s = capra::skew_norm();
  EXPECT_DOUBLE_EQ(capra::norm(s, vec({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(capra::norm(s, vec({0, 1})), 2.0);
  EXPECT_DOUBLE_EQ(capra::norm(s, vec({1, 2, -3})), 6.0);
  EXPECT_FALSE(s.orthant_monotonic());
}

TEST(Instance, ParsesBothSetKinds) {
  const capra::Instance a = capra::parse_instance(
      R"({"source": "lp:2", "phi": [0, 1, 2], "set": {"kind": "finite", "points": [[1, 0], [1, 1]]}})");
  EXPECT_EQ(a.set.points().size(), 2u);
  EXPECT_EQ(a.phi.dim(), 2);
  const capra::Instance b = capra::parse_instance(
      R"({"source": "linf", "phi": "sq", "set": {"kind": "affine", "x0": [1, 0], "v": [0, 1], "t": [0, 1], "n": 5}})");
  EXPECT_EQ(b.set.kind(), capra::FeasibleSet::Kind::affine);
  EXPECT_EQ(b.set.points().size(), 5u);
  EXPECT_EQ(b.set.points()[4], vec({1, 1}));
}

TEST(Instance, Rejects) {
  EXPECT_THROW(capra::parse_instance("{"), capra::ArgumentError);
  EXPECT_THROW(capra::parse_instance(R"({"source": "lp:2", "phi": "id"})"), capra::ArgumentError);
  EXPECT_THROW(capra::parse_instance(
                   R"({"source": "lp:2", "phi": [0, 1], "set": {"kind": "finite", "points": [[1, 0]]}})"),
               capra::ArgumentError);
  EXPECT_THROW(capra::parse_instance(
                   R"({"source": "lp:2", "phi": "id", "set": {"kind": "ball", "points": [[1, 0]]}})"),
               capra::ArgumentError);
  EXPECT_THROW(capra::load_instance("/nonexistent/instance.json"), capra::ArgumentError);
}

}  // namespace
