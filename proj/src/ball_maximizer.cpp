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

// Numerical dual evaluation for norms given only as an evaluation procedure.
//
// sup { <x, y> : |||x||| <= 1 } = 1 / min { |||x||| : <x, y> = 1 }, and the right hand side is
// a convex problem on an affine hyperplane. We parametrize the hyperplane as x0 + N z with N an
// orthonormal basis of y^perp and minimize with Nelder-Mead followed by a randomized pattern
// search, which copes with the kinks of polyhedral norms.

#include <capra/normcore.hpp>

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace capra::detail {
namespace {

class HyperplaneObjective {
 public:
  HyperplaneObjective(const std::function<double(const Vector&)>& g, const Vector& w, const IndexSet& K, int d)
      : g_(g), K_(K), d_(d) {
    const Eigen::Index m = w.size();
    x0_ = w / w.squaredNorm();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
    basis_ = Q.rightCols(m - 1);
  }

  Eigen::Index dim() const { return basis_.cols(); }
  double scale() const { return x0_.norm(); }

  Vector point(const Vector& z) const { return dim() == 0 ? x0_ : Vector(x0_ + basis_ * z); }

  Vector embed(const Vector& compressed) const {
    Vector full = Vector::Zero(d_);
    for (int i = 0; i < K_.size(); ++i) full[K_[static_cast<std::size_t>(i)]] = compressed[i];
    return full;
  }

  double operator()(const Vector& z) const {
    ++evaluations;
    const double v = g_(embed(point(z)));
    if (!std::isfinite(v) || v < 0.0) throw InvalidNormError("custom norm returned a negative or non-finite value");
    return v;
  }

  mutable long evaluations = 0;

 private:
  const std::function<double(const Vector&)>& g_;
  IndexSet K_;
  int d_;
  Vector x0_;
  Eigen::MatrixXd basis_;
};

struct Best {
  Vector z;
  double f;
};

Best nelder_mead(const HyperplaneObjective& h, Vector start, double size, int max_iter) {
  const Eigen::Index n = h.dim();
  std::vector<Vector> simplex(static_cast<std::size_t>(n + 1), start);
  std::vector<double> fv(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += size;
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = h(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo = order.front();
    const std::size_t hi = order.back();
    const std::size_t nh = order[order.size() - 2];
    if (std::abs(fv[hi] - fv[lo]) <= 1e-15 * (1.0 + std::abs(fv[lo]))) break;

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != hi) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const Vector xr = centroid + (centroid - simplex[hi]);
    const double fr = h(xr);
    if (fr < fv[lo]) {
      const Vector xe = centroid + 2.0 * (centroid - simplex[hi]);
      const double fe = h(xe);
      if (fe < fr) {
        simplex[hi] = xe;
        fv[hi] = fe;
      } else {
        simplex[hi] = xr;
        fv[hi] = fr;
      }
    } else if (fr < fv[nh]) {
      simplex[hi] = xr;
      fv[hi] = fr;
    } else {
      const Vector xc = fr < fv[hi] ? Vector(centroid + 0.5 * (xr - centroid))
                                    : Vector(centroid + 0.5 * (simplex[hi] - centroid));
      const double fc = h(xc);
      if (fc < std::min(fr, fv[hi])) {
        simplex[hi] = xc;
        fv[hi] = fc;
      } else {
        for (std::size_t i = 0; i < simplex.size(); ++i) {
          if (i == lo) continue;
          simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
          fv[i] = h(simplex[i]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {simplex[best], fv[best]};
}

Best pattern_search(const HyperplaneObjective& h, Best cur, double step) {
  const Eigen::Index n = h.dim();
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  const double floor = 1e-14 * (1.0 + h.scale());
  while (step > floor) {
    std::vector<Vector> dirs;
    for (Eigen::Index i = 0; i < n; ++i) {
      dirs.push_back(Vector::Unit(n, i));
      dirs.push_back(-Vector::Unit(n, i));
    }
    for (int r = 0; r < 8 * static_cast<int>(n); ++r) {
      Vector u(n);
      for (Eigen::Index i = 0; i < n; ++i) u[i] = gauss(rng);
      u.normalize();
      dirs.push_back(u);
      dirs.push_back(-u);
    }
    bool improved = false;
    for (const Vector& u : dirs) {
      const Vector cand = cur.z + step * u;
      const double fc = h(cand);
      if (fc < cur.f) {
        cur = {cand, fc};
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return cur;
}

}  // namespace

BallMaximum numeric_ball_maximum(const std::function<double(const Vector&)>& g, const Vector& y, const IndexSet& K) {
  const int d = static_cast<int>(y.size());
  K.check_range(d);
  Vector w(K.size());
  for (int i = 0; i < K.size(); ++i) w[i] = y[K[static_cast<std::size_t>(i)]];

  BallMaximum out;
  out.argmax = Vector::Zero(d);
  if (K.empty() || w.cwiseAbs().maxCoeff() == 0.0) return out;

  HyperplaneObjective h(g, w, K, d);
  Best best{Vector::Zero(h.dim()), h(Vector::Zero(h.dim()))};
  if (h.dim() > 0) {
    for (int restart = 0; restart < 3; ++restart) {
      const Best nm = nelder_mead(h, best.z, h.scale() * (restart == 0 ? 1.0 : 0.1), 400 * static_cast<int>(h.dim()));
      if (nm.f < best.f) best = nm;
    }
    best = pattern_search(h, best, 0.05 * h.scale());
  }
  if (!(best.f > 0.0)) throw InvalidNormError("custom norm vanishes at a nonzero vector");
  out.value = 1.0 / best.f;
  out.argmax = h.embed(h.point(best.z)) / best.f;
  return out;
}

}  // namespace capra::detail
