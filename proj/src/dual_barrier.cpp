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

#include <capra/detail/dual_barrier.hpp>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace capra::detail {

double DualPiece::local(const Vector& y, Vector& grad, Eigen::MatrixXd& hess, bool want_hess) const {
  const int m = support.size();
  grad.resize(m);
  if (want_hess) hess.setZero(m, m);
  if (shape == Shape::linear) {
    double v = 0.0;
    for (int a = 0; a < m; ++a) {
      const int i = support[static_cast<std::size_t>(a)];
      grad[a] = direction[i];
      v += direction[i] * y[i];
    }
    return v;
  }
  Vector z(m);
  for (int a = 0; a < m; ++a) z[a] = y[support[static_cast<std::size_t>(a)]];
  const double f = lp_norm(z, LpExponent::finite(q));
  if (f == 0.0) {
    grad.setZero();
    return 0.0;
  }
  // grad_i = sign(z_i) |z_i / f|^(q-1),  Hess = (q-1)/f (diag |z_i/f|^(q-2) - grad grad^T).
  Vector r(m);
  for (int a = 0; a < m; ++a) {
    r[a] = std::max(std::abs(z[a]) / f, 1e-8);
    grad[a] = (z[a] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(z[a]) / f, q - 1.0);
  }
  if (want_hess) {
    for (int a = 0; a < m; ++a) hess(a, a) = std::pow(r[a], q - 2.0);
    hess.noalias() -= grad * grad.transpose();
    hess *= (q - 1.0) / f;
  }
  return f;
}

double DualPiece::value(const Vector& y) const {
  // Hot in the line search, so no temporaries.
  double v = 0.0;
  if (shape == Shape::linear) {
    for (int i : support.indices()) v += direction[i] * y[i];
    return v;
  }
  double big = 0.0;
  for (int i : support.indices()) big = std::max(big, std::abs(y[i]));
  if (big == 0.0) return 0.0;
  for (int i : support.indices()) v += std::pow(std::abs(y[i]) / big, q);
  return big * std::pow(v, 1.0 / q);
}

Vector DualPiece::atom(const Vector& y) const {
  Vector g;
  Eigen::MatrixXd h;
  local(y, g, h, false);
  Vector a = Vector::Zero(y.size());
  for (int i = 0; i < support.size(); ++i) a[support[static_cast<std::size_t>(i)]] = g[i];
  return a;
}

std::vector<DualPiece> make_dual_pieces(const SourceNorm& n, int d, const std::vector<int>& levels,
                                        const std::vector<double>& weights, std::size_t max_pieces) {
  if (!n.is_lp()) throw UnsupportedError("dual pieces are only available for lp sources");
  const LpExponent q = n.dual_exponent();
  std::vector<DualPiece> out;

  if (q.is_infinite()) {
    // max_{i in K} |y_i| <= w_l for every |K| = l reduces to |y_i| <= min_l w_l.
    int best_level = levels.front();
    for (int l : levels) {
      if (weights[static_cast<std::size_t>(l)] < weights[static_cast<std::size_t>(best_level)]) best_level = l;
    }
    for (int i = 0; i < d; ++i) {
      for (double sgn : {1.0, -1.0}) {
        DualPiece p;
        p.shape = DualPiece::Shape::linear;
        p.support = IndexSet({i});
        p.level = best_level;
        p.weight = weights[static_cast<std::size_t>(best_level)];
        p.direction = Vector::Zero(d);
        p.direction[i] = sgn;
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  const bool linear = q.value() == 1.0;
  std::size_t count = 0;
  for (int l : levels) {
    const auto subsets = static_cast<std::size_t>(binomial(d, l));
    count += linear ? subsets * (std::size_t{1} << l) : subsets;
  }
  if (count > max_pieces) throw UnsupportedError("dual piece expansion too large for the barrier solver");
  out.reserve(count);

  for (int l : levels) {
    const double w = weights[static_cast<std::size_t>(l)];
    for_each_subset(d, l, [&](const IndexSet& K) {
      if (!linear) {
        DualPiece p;
        p.shape = DualPiece::Shape::lq;
        p.support = K;
        p.level = l;
        p.weight = w;
        p.q = q.value();
        out.push_back(std::move(p));
        return;
      }
      for (unsigned mask = 0; mask < (1u << l); ++mask) {
        DualPiece p;
        p.shape = DualPiece::Shape::linear;
        p.support = K;
        p.level = l;
        p.weight = w;
        p.direction = Vector::Zero(d);
        for (int a = 0; a < l; ++a) p.direction[K[static_cast<std::size_t>(a)]] = (mask >> a) & 1u ? -1.0 : 1.0;
        out.push_back(std::move(p));
      }
    });
  }
  return out;
}

DualBarrier::DualBarrier(Vector x, std::vector<DualPiece> pieces, bool epigraph, double box_radius)
    : x_(std::move(x)),
      pieces_(std::move(pieces)),
      epigraph_(epigraph),
      box_radius_(box_radius),
      d_(static_cast<int>(x_.size())) {
  if (pieces_.empty()) throw ArgumentError("DualBarrier: no constraints");
}

bool DualBarrier::slacks(const Vector& u, std::vector<double>& out) const {
  const Vector y = u.head(d_);
  const double s = epigraph_ ? u[d_] : 0.0;
  out.resize(pieces_.size());
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    out[j] = pieces_[j].weight + s - pieces_[j].value(y);
    if (!(out[j] > 0.0)) return false;
  }
  if (epigraph_ && !(s > 0.0)) return false;
  if (std::isfinite(box_radius_) && !(box_radius_ * box_radius_ - y.squaredNorm() > 0.0)) return false;
  return true;
}

double DualBarrier::potential(const Vector& u, double t, const std::vector<double>& sl) const {
  const Vector y = u.head(d_);
  double v = t * x_.dot(y);
  if (epigraph_) v += -t * u[d_] + std::log(u[d_]);
  for (double s : sl) v += std::log(s);
  if (std::isfinite(box_radius_)) v += std::log(box_radius_ * box_radius_ - y.squaredNorm());
  return v;
}

Vector DualBarrier::initial_point() const {
  const int n = d_ + (epigraph_ ? 1 : 0);
  Vector u = Vector::Zero(n);
  Vector dir(d_);
  for (int i = 0; i < d_; ++i) dir[i] = x_[i] > 0 ? 1.0 : (x_[i] < 0 ? -1.0 : 0.5);
  double fmax = 0.0;
  double wmin = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    fmax = std::max(fmax, p.value(dir));
    wmin = std::min(wmin, p.weight);
  }
  // Halfway to the tightest constraint: the norms are not smooth at the origin, so stay off it.
  double alpha = wmin > 0.0 && fmax > 0.0 ? 0.5 * wmin / fmax : 1e-2;
  if (std::isfinite(box_radius_)) alpha = std::min(alpha, 0.1 * box_radius_ / dir.norm());
  u.head(d_) = alpha * dir;
  if (epigraph_) {
    double excess = 0.0;
    for (const auto& p : pieces_) excess = std::max(excess, p.value(u.head(d_)) - p.weight);
    u[d_] = 1.0 + excess;
  }
  return u;
}

BarrierState DualBarrier::solve(const std::function<bool(const BarrierState&)>& done, const BarrierOptions& opts) const {
  const int n = d_ + (epigraph_ ? 1 : 0);
  const bool boxed = std::isfinite(box_radius_);
  Vector u = initial_point();
  std::vector<double> sl;
  if (!slacks(u, sl)) throw InconsistencyError("DualBarrier: infeasible starting point");

  BarrierState state;
  Vector grad_local;
  Eigen::MatrixXd hess_local;
  Vector g(n);
  Eigen::MatrixXd G(n, n);
  std::vector<double> trial;

  // Start where t <x, y> balances the barrier (about one unit per constraint), so that the
  // first center is not pulled onto the kink of the norms at y = 0.
  const double m = static_cast<double>(pieces_.size() + (epigraph_ ? 1 : 0) + (boxed ? 1 : 0));
  const double lin = x_.dot(u.head(d_));
  const double t_start = lin > 0.0 ? std::max(opts.t0, m / lin) : opts.t0;

  for (double t = t_start; t <= opts.t_max; t *= opts.mu) {
    bool centered = false;
    for (int it = 0; it < opts.max_newton_per_centering; ++it) {
      const Vector y = u.head(d_);
      g.setZero();
      G.setZero();
      g.head(d_) = t * x_;
      if (epigraph_) {
        g[d_] += -t + 1.0 / u[d_];
        G(d_, d_) += 1.0 / (u[d_] * u[d_]);
      }
      for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const DualPiece& p = pieces_[j];
        p.local(y, grad_local, hess_local, p.shape == DualPiece::Shape::lq);
        const double s = sl[j];
        const double inv = 1.0 / s;
        const double inv2 = inv * inv;
        const int m = p.support.size();
        for (int a = 0; a < m; ++a) {
          const int ia = p.support[static_cast<std::size_t>(a)];
          g[ia] -= grad_local[a] * inv;
          for (int b = 0; b < m; ++b) {
            const int ib = p.support[static_cast<std::size_t>(b)];
            double h = grad_local[a] * grad_local[b] * inv2;
            if (p.shape == DualPiece::Shape::lq) h += hess_local(a, b) * inv;
            G(ia, ib) += h;
          }
          if (epigraph_) {
            G(ia, d_) -= grad_local[a] * inv2;
            G(d_, ia) -= grad_local[a] * inv2;
          }
        }
        if (epigraph_) {
          g[d_] += inv;
          G(d_, d_) += inv2;
        }
      }
      if (boxed) {
        const double sb = box_radius_ * box_radius_ - y.squaredNorm();
        g.head(d_) -= 2.0 * y / sb;
        G.topLeftCorner(d_, d_).diagonal().array() += 2.0 / sb;
        G.topLeftCorner(d_, d_).noalias() += 4.0 * y * y.transpose() / (sb * sb);
      }

      Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
      Vector step = ldlt.solve(g);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        const double reg = 1e-12 * (1.0 + G.diagonal().cwiseAbs().maxCoeff());
        Eigen::MatrixXd Gr = G;
        Gr.diagonal().array() += reg;
        step = Gr.ldlt().solve(g);
      }
      const double decrement = g.dot(step);
      ++state.newton_steps;
      if (!(decrement > 0.0) || decrement * 0.5 <= 1e-10) {
        centered = true;
        break;
      }

      const double phi0 = potential(u, t, sl);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        const Vector cand = u + alpha * step;
        if (slacks(cand, trial)) {
          const double phi1 = potential(cand, t, trial);
          if (phi1 >= phi0 + 0.25 * alpha * decrement) {
            u = cand;
            sl = trial;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved) {
        centered = decrement * 0.5 <= 1e-6;
        break;
      }
    }

    state.y = u.head(d_);
    state.s = epigraph_ ? u[d_] : 0.0;
    state.t = t;
    state.centered = centered;
    state.multipliers.resize(pieces_.size());
    for (std::size_t j = 0; j < pieces_.size(); ++j) state.multipliers[j] = 1.0 / (t * sl[j]);
    state.epigraph_multiplier = epigraph_ ? 1.0 / (t * state.s) : 0.0;
    state.box_multiplier = boxed ? 1.0 / (t * (box_radius_ * box_radius_ - state.y.squaredNorm())) : 0.0;
    if (done(state)) return state;
  }
  return state;
}

std::vector<double> reconstruct(const Vector& x, const std::vector<Vector>& atoms, const std::vector<double>& mu) {
  const Eigen::Index d = x.size();
  std::vector<double> c = mu;
  for (int pass = 0; pass < 3; ++pass) {
    Vector r = x;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (!(c[j] > 0.0)) continue;
      r -= c[j] * atoms[j];
      M.noalias() += c[j] * atoms[j] * atoms[j].transpose();
    }
    if (r.cwiseAbs().maxCoeff() == 0.0) break;
    // Correction proportional to c: c_j <- c_j (1 + <a_j, lambda>) with M lambda = r.
    const Vector lambda = M.completeOrthogonalDecomposition().solve(r);
    if (!lambda.allFinite()) break;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (c[j] > 0.0) c[j] = std::max(0.0, c[j] * (1.0 + atoms[j].dot(lambda)));
    }
  }
  return c;
}

}  // namespace capra::detail
