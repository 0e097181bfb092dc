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

#ifndef CAPRA_DETAIL_DUAL_BARRIER_HPP
#define CAPRA_DETAIL_DUAL_BARRIER_HPP

#include <capra/normcore.hpp>

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <vector>

namespace capra::detail {

/// One convex piece f(y) of a top-k dual norm. Either the lq norm of y_K (smooth for 1 < q < inf)
/// or a linear form <sigma, y> coming from the expansion of a polyhedral dual norm.
/// The gradient of f is a primal atom: supported on K with source norm 1.
struct DualPiece {
  enum class Shape { lq, linear };

  Shape shape = Shape::lq;
  IndexSet support;
  int level = 0;        ///< sparsity class of the atom (|K| for lq pieces)
  double weight = 0.0;  ///< constraint is f(y) <= weight (+ s in epigraph mode)
  double q = 2.0;
  Vector direction;  ///< linear pieces only, full dimension

  double value(const Vector& y) const;
  /// Gradient in full dimension.
  Vector atom(const Vector& y) const;
  /// Value, with gradient and (optionally) Hessian restricted to the support block.
  double local(const Vector& y, Vector& grad, Eigen::MatrixXd& hess, bool want_hess) const;
};

/// Pieces such that max over pieces with level l of f equals top_l(y) for every requested level.
/// `weights[l]` is the right hand side for level l. Throws UnsupportedError for custom sources or
/// when the expansion exceeds `max_pieces`.
std::vector<DualPiece> make_dual_pieces(const SourceNorm& n, int d, const std::vector<int>& levels,
                                        const std::vector<double>& weights, std::size_t max_pieces = 60000);

struct BarrierState {
  Vector y;
  double s = 0.0;  ///< epigraph variable (epigraph mode only)
  double t = 0.0;
  std::vector<double> multipliers;  ///< 1 / (t slack_j), one per piece
  double epigraph_multiplier = 0.0;
  double box_multiplier = 0.0;
  int newton_steps = 0;
  bool centered = false;
};

struct BarrierOptions {
  double t0 = 1.0;
  double mu = 8.0;
  double t_max = 1e15;
  int max_newton_per_centering = 200;
};

/// Log-barrier path following for
///
///   maximize <x, y> - s   s.t.  f_j(y) <= w_j + s,  s >= 0,  |y|_2 <= R      (epigraph mode)
///   maximize <x, y>       s.t.  f_j(y) <= w_j                                 (plain mode)
///
/// The multipliers recover a primal decomposition x ~= sum_j mu_j grad f_j(y).
class DualBarrier {
 public:
  DualBarrier(Vector x, std::vector<DualPiece> pieces, bool epigraph,
              double box_radius = std::numeric_limits<double>::infinity());

  /// Follows the central path; after each centering `done` inspects the state and returns true to stop.
  BarrierState solve(const std::function<bool(const BarrierState&)>& done, const BarrierOptions& opts = {}) const;

  const std::vector<DualPiece>& pieces() const noexcept { return pieces_; }

 private:
  bool slacks(const Vector& u, std::vector<double>& out) const;
  double potential(const Vector& u, double t, const std::vector<double>& sl) const;
  Vector initial_point() const;

  Vector x_;
  std::vector<DualPiece> pieces_;
  bool epigraph_;
  double box_radius_;
  int d_;
};

/// Nonnegative coefficients c close to mu with sum_j c_j atoms_j = x as nearly as possible.
/// Multipliers read off the barrier lose precision as slacks shrink; this restores the equality.
std::vector<double> reconstruct(const Vector& x, const std::vector<Vector>& atoms, const std::vector<double>& mu);

}  // namespace capra::detail

#endif  // CAPRA_DETAIL_DUAL_BARRIER_HPP
