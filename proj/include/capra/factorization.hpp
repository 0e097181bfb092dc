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

#ifndef CAPRA_FACTORIZATION_HPP
#define CAPRA_FACTORIZATION_HPP

#include <capra/capra.hpp>
#include <capra/decomposition.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace capra {

/// The convex factorization function
///
///   L0^phi(x) = min { sum_l phi(l) sn_l(z^(l)) : sum_l sn_l(z^(l)) <= 1, sum_l z^(l) = x },
///
/// +inf outside the unit ball. The lower bound comes from an explicit y through
/// <x, y> - conj(y); the upper bound is the cost of an explicit decomposition.
/// Throws ConvergenceError with the bracket when it stays wider than opts.gap_tol.
BracketedValue eval_L0(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                       const FactorizationOptions& opts = {});

struct VariationalValue {
  double value = 0.0;      ///< phi(l0(x))
  Decomposition witness;   ///< z^(l0(x)) = x, all other parts zero
  double lower = 0.0;      ///< solver dual bound for the normalized problem
  double upper = 0.0;      ///< solver primal bound
  /// Cheapest decomposition other than the single block (+inf when none was generated).
  double best_candidate = 0.0;
  std::string best_label;
};

/// (1/|||x|||) min sum_l phi(l) sn_l(z^(l)) over sum_l sn_l(z^(l)) <= |||x|||, sum_l z^(l) = x.
/// Always runs the solver. Throws InconsistencyError if the solver contradicts phi(l0(x)) by more than 1e-6.
VariationalValue variational_phi_l0(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                    const FactorizationOptions& opts = {});

struct SphereReport {
  bool ok = true;
  int samples = 0;
  int failures = 0;
  double max_residual = 0.0;
  Vector worst;
};

/// |L0^phi(s) - phi(l0(s))| <= 1e-6 on random unit-sphere points with random supports.
SphereReport sphere_coincidence_check(const KNormFamily& f, const PhiFunction& phi, int samples, std::uint64_t seed,
                                      const FactorizationOptions& opts = {});

struct CoincidenceReport {
  bool agree = false;
  bool member = false;            ///< subdiff_membership at s
  bool inequality_holds = false;  ///< convex subgradient inequality on the whole panel
  int probes = 0;
  double min_slack = 0.0;         ///< min over probes of L0(x') - L0(s) - <y, x' - s>
  std::optional<Vector> violating_probe;
};

/// Compares membership in the coupling subdifferential at a sphere point s with the ordinary
/// subgradient inequality of L0^phi, sampled over a probe panel in the unit ball.
CoincidenceReport rm_subdiff_coincidence_check(const KNormFamily& f, const PhiFunction& phi, const Vector& s,
                                               const Vector& y, std::uint64_t seed = 7,
                                               const FactorizationOptions& opts = {});

}  // namespace capra

#endif  // CAPRA_FACTORIZATION_HPP
