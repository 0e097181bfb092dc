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

#ifndef CAPRA_KNORMS_HPP
#define CAPRA_KNORMS_HPP

#include <capra/normcore.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace capra {

/// Largest dimension for which support enumeration is attempted.
inline constexpr int kEnumDimCap = 12;

/// The source norm together with the ambient dimension. Owns nothing mutable.
class KNormFamily {
 public:
  KNormFamily(SourceNorm source, int dim);

  const SourceNorm& source() const noexcept { return source_; }
  int dim() const noexcept { return dim_; }

  bool orthant_monotonic() const noexcept { return source_.orthant_monotonic(); }
  bool orthant_strictly_monotonic() const noexcept { return source_.orthant_strictly_monotonic(); }
  bool dual_orthant_strictly_monotonic() const noexcept { return source_.dual_orthant_strictly_monotonic(); }
  /// Both the norm and its dual are orthant-strictly monotonic.
  bool osm_pair() const noexcept { return orthant_strictly_monotonic() && dual_orthant_strictly_monotonic(); }

  /// Throws ArgumentError unless v has the family's dimension and finite entries.
  void check(const Vector& v, const char* what) const;

 private:
  SourceNorm source_;
  int dim_;
};

/// Which evaluation route to take. `automatic` prefers analytic/fast paths.
enum class KPath { automatic, generic };

struct TopKValue {
  double value = 0.0;
  /// A maximizing support (lexicographically first among ties for enumeration).
  IndexSet support;
};

/// Generalized top-k dual norm sup_{|K| <= k} |||y_K|||_*, with the convention top_0 = 0.
double top_k_dual_norm(const KNormFamily& f, const Vector& y, int k, KPath path = KPath::automatic);
TopKValue top_k_dual_norm_support(const KNormFamily& f, const Vector& y, int k, KPath path = KPath::automatic);

/// top_0(y), ..., top_d(y) in one pass.
std::vector<double> top_k_chain(const KNormFamily& f, const Vector& y, KPath path = KPath::automatic);

/// Primal point x in R_K with |||x||| <= 1 and <x, y> = top_k(y): the atom exposed by y.
Vector top_k_atom(const KNormFamily& f, const Vector& y, int k);

struct KSupportOptions {
  double gap_tol = 1e-6;  ///< relative bracket width required on the generic path
  int max_iters = 500;  ///< column generation rounds for sources without second-order pieces
};

/// A k-support value with its certificates.
struct KSupportValue {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// "zero", "full", "sparse", "l1", "linf", "k1", "barrier", "columns".
  std::string method;
  /// k-sparse blocks summing to x whose norms sum to `upper` (empty on analytic paths).
  std::vector<Vector> blocks;
  /// Dual vector certifying `lower` = <x, y> / top_k(y) (empty on analytic paths).
  Vector dual_witness;
};

/// Generalized k-support dual norm: the dual norm of top_k.
/// Throws ConvergenceError carrying both bounds when the generic bracket stays wider than gap_tol.
KSupportValue k_support_dual_norm_bracket(const KNormFamily& f, const Vector& x, int k,
                                          KPath path = KPath::automatic, const KSupportOptions& opts = {});
double k_support_dual_norm(const KNormFamily& f, const Vector& x, int k, KPath path = KPath::automatic,
                           const KSupportOptions& opts = {});

/// sup_{|K| <= k} |||y_K|||_{K,*} (restrict first, then dualize).
double coordinate_k_dual_norm(const KNormFamily& f, const Vector& y, int k);

struct NestingViolation {
  std::string family;  ///< "support" or "top"
  int k = 0;
  Vector witness;
  double lhs = 0.0;  ///< value at k
  double rhs = 0.0;  ///< value at k + 1 (or the outer norm on the last layer)
};

struct NestingReport {
  bool ok = true;
  int samples = 0;
  double max_layer_residual = 0.0;  ///< distance of |||x||| from the sn_d(x) bracket, and max |top_d(y) - |||y|||_*|
  std::optional<NestingViolation> violation;
};

/// Samples random vectors and checks sn_1 >= ... >= sn_d = |||.||| and top_1 <= ... <= top_d = |||.|||_*.
NestingReport ball_nesting_check(const KNormFamily& f, int samples, std::uint64_t seed);

}  // namespace capra

#endif  // CAPRA_KNORMS_HPP
