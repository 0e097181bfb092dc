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

#ifndef CAPRA_CAPRA_HPP
#define CAPRA_CAPRA_HPP

#include <capra/decomposition.hpp>
#include <capra/knorms.hpp>
#include <capra/phi.hpp>

#include <string>
#include <vector>

namespace capra {

/// <x, y> / |||x||| for x != 0, and 0 at the origin.
double coupling(const SourceNorm& n, const Vector& x, const Vector& y);

struct ConjugateValue {
  double value = 0.0;
  /// Levels l attaining max_l [top_l(y) - phi(l)], up to a relative 1e-12.
  std::vector<int> argmax;
  /// top_l(y) - phi(l) for l = 0, ..., d.
  std::vector<double> terms;
};

/// Conjugate of phi o l0 for the coupling: max over l of top_l(y) - phi(l), with top_0 = 0.
/// Throws UnsupportedError for sources not declared orthant-monotonic.
ConjugateValue capra_conjugate(const KNormFamily& f, const PhiFunction& phi, const Vector& y);

/// L0^phi(x / |||x|||), and phi(0) at the origin. Equals phi(l0(x)) when the source and its
/// dual are orthant-strictly monotonic; otherwise only a lower envelope.
BracketedValue capra_biconjugate(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                 const FactorizationOptions& opts = {});

struct MembershipDiagnostics {
  bool member = false;
  int level = 0;  ///< l0(x)
  /// |<x, y> - sn_l(x) top_l(y)|, and its relative threshold.
  double normal_cone_residual = 0.0;
  /// max_j [top_j(y) - phi(j)] - [top_l(y) - phi(l)] >= 0.
  double argmax_residual = 0.0;
  std::vector<int> argmax;
  /// Empty for members, otherwise the first failed condition.
  std::string failed;
};

/// Membership of y in the subdifferential at x. At x = 0 this is the at-zero test.
MembershipDiagnostics subdiff_membership(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                         const Vector& y, double tol);

/// top_l(y) <= phi(l) - phi(0) + tol for every l >= 1.
bool subdiff_at_zero_membership(const KNormFamily& f, const PhiFunction& phi, const Vector& y, double tol);

struct SubgradientCertificate {
  Vector y;
  double lambda = 0.0;
  Vector y0;  ///< unit dual-norm, support-preserving dual partner of x
  MembershipDiagnostics conditions;
};

inline constexpr double kLambdaCap = 1152921504606846976.0;  // 2^60

/// A subgradient lambda y0 with lambda minimal up to 1e-6. Needs the OSM flags on the source and its dual.
/// Throws ConstructionError if lambda passes kLambdaCap.
SubgradientCertificate subgradient_construct(const KNormFamily& f, const PhiFunction& phi, const Vector& x);

/// Membership of t y1 + (1 - t) y2 at x.
bool subdiff_convexity_probe(const KNormFamily& f, const PhiFunction& phi, const Vector& x, const Vector& y1,
                             const Vector& y2, double t, double tol = 1e-8);

}  // namespace capra

#endif  // CAPRA_CAPRA_HPP
