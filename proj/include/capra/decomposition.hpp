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

#ifndef CAPRA_DECOMPOSITION_HPP
#define CAPRA_DECOMPOSITION_HPP

#include <capra/types.hpp>

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capra {

/// Parts z^(1), ..., z^(d) with sum_l z^(l) = x. parts[l - 1] holds z^(l).
struct Decomposition {
  std::vector<Vector> parts;
  /// Certified upper bounds on sn_l(z^(l)), same indexing as `parts`.
  std::vector<double> part_bounds;
  /// Simplex weights lambda_0, ..., lambda_d for the ball and sphere forms.
  std::optional<Vector> weights;

  static Decomposition zeros(int d);

  /// sum_l z^(l).
  Vector sum() const;
  /// sum_l part_bounds[l], the budget used.
  double budget() const;
};

/// An optimal value sandwiched between a dual certificate and a primal witness.
struct BracketedValue {
  double lower = 0.0;
  double upper = 0.0;
  bool infinite = false;
  Decomposition witness;
  /// y with <x, y> - conj(y) = lower.
  Vector dual_witness;
  /// "zero", "infeasible", "sphere", "ray", "barrier", "columns".
  std::string method;
  /// Cost of every primal candidate considered, by label.
  std::vector<std::pair<std::string, double>> candidates;

  double value() const {
    return infinite ? std::numeric_limits<double>::infinity() : 0.5 * (lower + upper);
  }
  double gap() const { return infinite ? 0.0 : upper - lower; }
};

/// Solver controls for L0^phi and everything built on it.
struct FactorizationOptions {
  /// On the unit sphere, return phi(l0(x)) with the single-block witness (needs the OSM flags).
  bool sphere_shortcut = true;
  /// Required width of the bracket, relative to max(1, |value|).
  double gap_tol = 1e-6;
  /// Column generation rounds for custom sources.
  int max_iters = 200;
};

}  // namespace capra

#endif  // CAPRA_DECOMPOSITION_HPP
