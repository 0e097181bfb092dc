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

#ifndef CAPRA_MONOTONICITY_HPP
#define CAPRA_MONOTONICITY_HPP

#include <capra/knorms.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace capra {

enum class Verdict { passes, fails, inconclusive };
enum class MonotoneProperty { om, osm };

const char* to_string(Verdict v);
const char* to_string(MonotoneProperty p);

/// A sampling verdict. `analytic` marks verdicts that are exact rather than sampled.
struct MonotonicityReport {
  Verdict verdict = Verdict::inconclusive;
  /// (x, x') with |x| <= |x'|, x o x' >= 0 and the norm failing to increase.
  std::optional<std::pair<Vector, Vector>> counterexample;
  int samples_used = 0;
  MonotoneProperty property = MonotoneProperty::om;
  bool analytic = false;
};

/// |x| <= |x'| and x o x' >= 0 imply |||x||| <= |||x'|||. lp kinds are answered analytically.
MonotonicityReport check_orthant_monotonic(const SourceNorm& n, int dim, int samples, std::uint64_t seed);

/// Same with strict domination in at least one coordinate and a strict increase required.
MonotonicityReport check_orthant_strictly_monotonic(const SourceNorm& n, int dim, int samples, std::uint64_t seed);

/// Re-evaluates a counterexample directly. True when it really refutes the property.
bool recheck_counterexample(const SourceNorm& n, MonotoneProperty p, const Vector& x, const Vector& xp);

/// The dual norm seen as a source norm, so that the checks above apply to it.
SourceNorm dual_as_source(const SourceNorm& n);

/// v with supp(v) = supp(u), u o v >= 0 and <u, v> = |||u||| |||v|||_*.
/// Throws ConstructionError when no such v is found (the norm is then not orthant-strictly monotonic).
Vector support_preserving_dual_pair(const SourceNorm& n, const Vector& u);

struct StrictChainReport {
  bool ok = true;
  int level = 0;               ///< l0(y)
  std::vector<double> chain;   ///< top_0(y), ..., top_d(y)
  double min_strict_gap = 0.0; ///< min over k < l of top_{k+1} - top_k (+inf when l <= 1)
  double max_tail_residual = 0.0;
  std::optional<int> failing_index;  ///< first k whose relation fails
};

/// top_1(y) < ... < top_l(y) = ... = top_d(y) = |||y|||_* with l = l0(y).
StrictChainReport strict_chain_check(const KNormFamily& f, const Vector& y);

/// A family whose declared custom flags survived sampling (lp sources pass through).
/// Throws ConstructionError when a declared flag is refuted.
KNormFamily make_verified_family(const SourceNorm& n, int dim, int samples = 2000, std::uint64_t seed = 1);

}  // namespace capra

#endif  // CAPRA_MONOTONICITY_HPP
