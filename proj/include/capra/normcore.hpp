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

#ifndef CAPRA_NORMCORE_HPP
#define CAPRA_NORMCORE_HPP

#include <capra/types.hpp>

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

namespace capra {

/// Exponent p of an lp norm: a finite value in [1, inf) or the distinguished infinity token.
class LpExponent {
 public:
  static LpExponent finite(double p);
  static LpExponent infinity() noexcept { return LpExponent(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; +inf for the infinity token.
  double value() const noexcept { return infinite_ ? std::numeric_limits<double>::infinity() : p_; }
  /// Conjugate exponent q with 1/p + 1/q = 1 (1 <-> inf exactly).
  LpExponent conjugate() const;
  std::string to_string() const;

  friend bool operator==(const LpExponent& a, const LpExponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  LpExponent() = default;
  bool infinite_ = true;
  double p_ = 0.0;
};

/// (sum |x_i|^p)^(1/p), or max |x_i| for p = inf.
template <typename Derived>
typename Derived::Scalar lp_norm(const Eigen::MatrixBase<Derived>& x, const LpExponent& p) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  if (x.size() == 0) return Scalar(0);
  if (p.is_infinite()) return x.cwiseAbs().maxCoeff();
  const double pv = p.value();
  if (pv == 1.0) return x.cwiseAbs().sum();
  if (pv == 2.0) return x.norm();
  // Scale by the max modulus to avoid overflow in the power sum.
  const Scalar scale = x.cwiseAbs().maxCoeff();
  if (scale == Scalar(0)) return Scalar(0);
  Scalar acc(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += pow(abs(x[i]) / scale, Scalar(pv));
  return scale * pow(acc, Scalar(1.0 / pv));
}

/// Element of the lp duality map of u: v_i = sign(u_i) |u_i|^(p-1) for finite p > 1,
/// sign(u) on supp(u) for p = 1, and a signed maximal coordinate for p = inf.
/// The result satisfies <u, v> = ||u||_p ||v||_q and supp(v) is contained in supp(u).
template <typename Derived>
VectorX<typename Derived::Scalar> lp_duality_map(const Eigen::MatrixBase<Derived>& u, const LpExponent& p) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  VectorX<Scalar> v = VectorX<Scalar>::Zero(u.size());
  if (u.size() == 0) return v;
  const Scalar scale = u.cwiseAbs().maxCoeff();
  if (scale == Scalar(0)) return v;
  if (p.is_infinite()) {
    Eigen::Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    v[imax] = u[imax] > 0 ? Scalar(1) : Scalar(-1);
    return v;
  }
  const double pv = p.value();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (abs(u[i]) <= Scalar(kZeroTol)) continue;
    const Scalar s = u[i] > 0 ? Scalar(1) : Scalar(-1);
    v[i] = pv == 1.0 ? s : s * pow(abs(u[i]) / scale, Scalar(pv - 1.0));
  }
  return v;
}

/// User-provided norm. The flags are claims; module monotonicity verifies them.
struct CustomNorm {
  std::string name = "custom";
  std::function<double(const Vector&)> eval;
  /// Optional analytic dual norm. Without it, duals come from the numerical ball maximizer.
  std::function<double(const Vector&)> dual;
  bool orthant_monotonic = false;
  bool orthant_strictly_monotonic = false;
  bool dual_orthant_strictly_monotonic = false;
  /// Largest dimension for which numerical dual evaluation is attempted.
  int oracle_dim_cap = 6;
};

/// The source norm generating the coupling and every derived k-norm family.
class SourceNorm {
 public:
  enum class Kind { lp, custom };

  static SourceNorm lp(double p);
  static SourceNorm lp(LpExponent p);
  static SourceNorm linf() { return lp(LpExponent::infinity()); }
  static SourceNorm custom(CustomNorm spec);

  Kind kind() const noexcept { return kind_; }
  bool is_lp() const noexcept { return kind_ == Kind::lp; }
  /// Only meaningful for lp kinds.
  const LpExponent& exponent() const noexcept { return p_; }
  LpExponent dual_exponent() const { return p_.conjugate(); }
  const CustomNorm* custom_spec() const noexcept { return custom_.get(); }

  /// Declared or analytic properties.
  bool orthant_monotonic() const noexcept;
  bool orthant_strictly_monotonic() const noexcept;
  bool dual_orthant_strictly_monotonic() const noexcept;
  /// True when the norm is invariant under coordinate permutations and sign flips.
  bool permutation_invariant_monotonic() const noexcept { return is_lp(); }
  bool has_analytic_dual() const noexcept;
  int oracle_dim_cap() const noexcept;

  /// "lp:2", "l1", "linf", "custom:<name>".
  std::string name() const;

 private:
  SourceNorm() = default;
  Kind kind_ = Kind::lp;
  LpExponent p_ = LpExponent::infinity();
  std::shared_ptr<const CustomNorm> custom_;
};

/// Number of entries with |x_i| > kZeroTol.
int l0(const Vector& x);

/// |||x|||. Throws InvalidNormError when a custom norm returns a negative or non-finite value.
double norm(const SourceNorm& n, const Vector& x);

/// |||y|||_* = sup { <x, y> : |||x||| <= 1 }.
double dual_norm(const SourceNorm& n, const Vector& y);

/// x_K: equal to x on K, zero elsewhere.
Vector restrict(const Vector& x, const IndexSet& K);

/// x / |||x||| for x != 0, and 0 for x = 0.
Vector normalize(const SourceNorm& n, const Vector& x);

/// |<x,y> - |||x||| |||y|||_*| <= tol (1 + |||x||| |||y|||_*).
bool is_dual_pair(const SourceNorm& n, const Vector& x, const Vector& y, double tol);

/// Result of maximizing a linear functional over a (restricted) unit ball.
struct BallMaximum {
  double value = 0.0;
  Vector argmax;
};

/// sup { <x, y> : x in R_K, |||x||| <= 1 } together with a maximizer supported on K.
/// For the full index set this is the dual norm and a dual-pair partner of y.
BallMaximum restricted_ball_maximum(const SourceNorm& n, const Vector& y, const IndexSet& K);

namespace detail {

/// Maximizes <x, y> over { x in R_K : g(x) <= 1 } for a norm g by minimizing g on the
/// hyperplane <x, y_K> = 1. Derivative free; intended for small K.
BallMaximum numeric_ball_maximum(const std::function<double(const Vector&)>& g, const Vector& y,
                                 const IndexSet& K);

}  // namespace detail

}  // namespace capra

#endif  // CAPRA_NORMCORE_HPP
