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

#ifndef CAPRA_SPARSEOPT_HPP
#define CAPRA_SPARSEOPT_HPP

#include <capra/factorization.hpp>

#include <vector>

namespace capra {

/// A finite feasible set, given as a list or as a grid on a segment x0 + t v, t in [a, b].
/// The origin is rejected.
class FeasibleSet {
 public:
  enum class Kind { finite, affine };

  static FeasibleSet finite(std::vector<Vector> points);
  /// n >= 2 equally spaced values of t, endpoints included.
  static FeasibleSet affine_slice(const Vector& x0, const Vector& v, double a, double b, int n);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Vector>& points() const noexcept { return points_; }
  int dim() const { return static_cast<int>(points_.front().size()); }
  /// Grid parameters (affine kind only).
  const std::vector<double>& ts() const noexcept { return ts_; }

  /// The same set scaled by rho > 0.
  FeasibleSet scaled(double rho) const;

 private:
  FeasibleSet() = default;
  void validate() const;

  Kind kind_ = Kind::finite;
  std::vector<Vector> points_;
  std::vector<double> ts_;
};

struct SparseSolution {
  double value = 0.0;
  Vector argmin;
  int argmin_index = 0;
  /// min over C of phi(l0(x)) by direct enumeration.
  double enumeration_value = 0.0;
  int enumeration_index = 0;
  /// min over C of the variational objective, each point evaluated by the solver.
  double reformulated_value = 0.0;
  int reformulated_index = 0;
  /// max over points of |objective_enum(x) - objective_reform(x)|.
  double max_pointwise_gap = 0.0;
  int points = 0;
};

/// min over C of phi(l0(x)), computed by enumeration and by the variational reformulation.
/// Throws InconsistencyError when the two disagree by more than 1e-6.
SparseSolution solve_min_phi_l0(const KNormFamily& f, const PhiFunction& phi, const FeasibleSet& C,
                                const FactorizationOptions& opts = {});

}  // namespace capra

#endif  // CAPRA_SPARSEOPT_HPP
