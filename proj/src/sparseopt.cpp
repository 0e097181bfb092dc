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

#include <capra/sparseopt.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace capra {

void FeasibleSet::validate() const {
  if (points_.empty()) throw ArgumentError("FeasibleSet: empty set");
  const Eigen::Index d = points_.front().size();
  for (const Vector& p : points_) {
    if (p.size() != d) throw ArgumentError("FeasibleSet: points of different dimensions");
    require_finite(p, "FeasibleSet");
    if (l0(p) == 0) throw ArgumentError("FeasibleSet: the origin must not belong to the set");
  }
}

FeasibleSet FeasibleSet::finite(std::vector<Vector> points) {
  FeasibleSet c;
  c.kind_ = Kind::finite;
  c.points_ = std::move(points);
  c.validate();
  return c;
}

FeasibleSet FeasibleSet::affine_slice(const Vector& x0, const Vector& v, double a, double b, int n) {
  require_same_size(x0, v, "FeasibleSet::affine_slice");
  if (n < 2 || !(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError("FeasibleSet::affine_slice: need a < b and n >= 2");
  }
  FeasibleSet c;
  c.kind_ = Kind::affine;
  for (int i = 0; i < n; ++i) {
    const double t = a + (b - a) * i / (n - 1);
    c.ts_.push_back(t);
    c.points_.push_back(x0 + t * v);
  }
  c.validate();
  return c;
}

FeasibleSet FeasibleSet::scaled(double rho) const {
  if (!(rho > 0.0)) throw ArgumentError("FeasibleSet::scaled: rho must be positive");
  FeasibleSet c = *this;
  for (Vector& p : c.points_) p *= rho;
  return c;
}

SparseSolution solve_min_phi_l0(const KNormFamily& f, const PhiFunction& phi, const FeasibleSet& C,
                                const FactorizationOptions& opts) {
  if (C.dim() != f.dim()) throw ArgumentError("solve_min_phi_l0: dimension mismatch");
  SparseSolution out;
  out.enumeration_value = std::numeric_limits<double>::infinity();
  out.reformulated_value = std::numeric_limits<double>::infinity();
  const auto& pts = C.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double direct = phi(l0(pts[i]));
    const VariationalValue v = variational_phi_l0(f, phi, pts[i], opts);
    // The reformulated objective is certified only up to the solver bracket; use its midpoint.
    const double reform = 0.5 * (v.lower + v.upper);
    out.max_pointwise_gap = std::max(out.max_pointwise_gap, std::abs(direct - reform));
    if (direct < out.enumeration_value) {
      out.enumeration_value = direct;
      out.enumeration_index = static_cast<int>(i);
    }
    if (reform < out.reformulated_value) {
      out.reformulated_value = reform;
      out.reformulated_index = static_cast<int>(i);
    }
  }
  out.points = static_cast<int>(pts.size());
  if (std::abs(out.enumeration_value - out.reformulated_value) > 1e-6) {
    throw InconsistencyError("solve_min_phi_l0: enumeration and reformulation disagree");
  }
  out.value = out.enumeration_value;
  out.argmin_index = out.enumeration_index;
  out.argmin = pts[static_cast<std::size_t>(out.argmin_index)];
  return out;
}

}  // namespace capra
