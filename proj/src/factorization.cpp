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

#include <capra/factorization.hpp>

#include <capra/detail/dual_barrier.hpp>
#include <capra/monotonicity.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace capra {

Decomposition Decomposition::zeros(int d) {
  Decomposition z;
  z.parts.assign(static_cast<std::size_t>(d), Vector::Zero(d));
  z.part_bounds.assign(static_cast<std::size_t>(d), 0.0);
  return z;
}

Vector Decomposition::sum() const {
  Vector s = Vector::Zero(parts.empty() ? 0 : parts.front().size());
  for (const Vector& p : parts) s += p;
  return s;
}

double Decomposition::budget() const { return std::accumulate(part_bounds.begin(), part_bounds.end(), 0.0); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact nonzero count; blocks are costed at this level, the cheapest admissible one.
int block_level(const Vector& b) {
  int c = 0;
  for (Eigen::Index i = 0; i < b.size(); ++i) c += b[i] != 0.0 ? 1 : 0;
  return c;
}

// A primal candidate: blocks whose levels and norms give a feasible decomposition.
struct Candidate {
  std::string label;
  std::vector<Vector> blocks;
  double cost = kInf;
  double budget = kInf;
};

class Problem {
 public:
  Problem(const KNormFamily& f, const PhiFunction& phi, const Vector& x)
      : f_(f), phi_(phi), x_(x), nx_(norm(f.source(), x)), d_(f.dim()) {}

  const Vector& x() const { return x_; }
  double nx() const { return nx_; }

  // max(0, max_l top_l(y) - phi(l)).
  double conjugate(const Vector& y) const {
    const std::vector<double> chain = top_k_chain(f_, y);
    double g = 0.0;
    for (int l = 1; l <= d_; ++l) g = std::max(g, chain[static_cast<std::size_t>(l)] - phi_(l));
    return g;
  }

  void offer_dual(const Vector& y) {
    const double v = x_.dot(y) - conjugate(y);
    if (v > lower_) {
      lower_ = v;
      dual_ = y;
    }
  }

  // Scores blocks plus the residual x - sum(blocks), mixing with the single block when over budget.
  void offer_blocks(const std::string& label, std::vector<Vector> blocks) {
    Vector sum = Vector::Zero(d_);
    for (const Vector& b : blocks) sum += b;
    const Vector r = x_ - sum;
    if (r.cwiseAbs().maxCoeff() > 0.0) blocks.push_back(r);
    double total = 0.0;
    for (const Vector& b : blocks) total += norm(f_.source(), b);
    if (total > 1.0) {
      const double denom = total - nx_;
      const double theta = denom > 0.0 ? std::clamp((total - 1.0) / denom, 0.0, 1.0) : 1.0;
      for (Vector& b : blocks) b *= 1.0 - theta;
      if (theta > 0.0) blocks.push_back(theta * x_);
    }
    Candidate c;
    c.label = label;
    c.cost = 0.0;
    c.budget = 0.0;
    for (Vector& b : blocks) {
      const double nb = norm(f_.source(), b);
      if (nb == 0.0) continue;
      c.cost += phi_(block_level(b)) * nb;
      c.budget += nb;
      c.blocks.push_back(std::move(b));
    }
    if (c.budget > 1.0 + 1e-9) return;
    costs_.emplace_back(c.label, c.cost);
    if (c.cost < best_.cost) best_ = std::move(c);
  }

  double lower() const { return lower_; }
  double upper() const { return best_.cost; }
  const Vector& dual() const { return dual_; }

  BracketedValue result(const std::string& method) const {
    BracketedValue out;
    out.method = method;
    out.lower = lower_;
    out.upper = best_.cost;
    out.dual_witness = dual_.size() == d_ ? dual_ : Vector(Vector::Zero(d_));
    out.witness = Decomposition::zeros(d_);
    for (const Vector& b : best_.blocks) {
      const auto l = static_cast<std::size_t>(block_level(b) - 1);
      out.witness.parts[l] += b;
      out.witness.part_bounds[l] += norm(f_.source(), b);
    }
    out.candidates = costs_;
    return out;
  }

 private:
  const KNormFamily& f_;
  const PhiFunction& phi_;
  Vector x_;
  double nx_;
  int d_;
  double lower_ = 0.0;  // y = 0 is always admissible
  Vector dual_;
  Candidate best_;
  std::vector<std::pair<std::string, double>> costs_;
};

// Direction along which the dual ray is searched: a dual partner of x when one is cheap.
Vector ray_direction(const KNormFamily& f, const Vector& x) {
  const SourceNorm& n = f.source();
  Vector y0 = n.is_lp() ? lp_duality_map(x, n.exponent()) : Vector(x);
  const double s = dual_norm(n, y0);
  return s > 0.0 ? Vector(y0 / s) : y0;
}

// Maximizes lambda -> <x, lambda y0> - conj(lambda y0) exactly: the function is concave and
// piecewise linear with breakpoints where two levels of the conjugate swap.
double best_ray_scale(const KNormFamily& f, const PhiFunction& phi, const Vector& x, const Vector& y0) {
  const std::vector<double> chain = top_k_chain(f, y0);
  const double c = x.dot(y0);
  const int d = f.dim();
  auto h = [&](double lambda) {
    double g = 0.0;
    for (int l = 1; l <= d; ++l) g = std::max(g, lambda * chain[static_cast<std::size_t>(l)] - phi(l));
    return lambda * c - g;
  };
  double best_lambda = 0.0;
  double best = 0.0;
  for (int i = 0; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      const double rise = chain[static_cast<std::size_t>(j)] - chain[static_cast<std::size_t>(i)];
      if (rise <= 0.0) continue;
      const double lambda = (phi(j) - phi(i)) / rise;
      if (lambda > 0.0 && std::isfinite(lambda) && h(lambda) > best) {
        best = h(lambda);
        best_lambda = lambda;
      }
    }
  }
  return best_lambda;
}

void offer_splits(Problem& p, const SourceNorm& n) {
  const Vector& x = p.x();
  const int d = static_cast<int>(x.size());
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
  const int l = block_level(x);
  p.offer_blocks("single-block", {x});
  // Largest j magnitudes against the rest.
  for (int j = 1; j < l; ++j) {
    Vector head = Vector::Zero(d);
    for (int a = 0; a < j; ++a) head[order[static_cast<std::size_t>(a)]] = x[order[static_cast<std::size_t>(a)]];
    p.offer_blocks("split-" + std::to_string(j), {head, x - head});
  }
  if (l > 1) {
    std::vector<Vector> singles;
    for (int i = 0; i < d; ++i) {
      if (x[i] != 0.0) singles.push_back(x[i] * Vector::Unit(d, i));
    }
    p.offer_blocks("singletons", singles);
  }
  (void)n;
}

// Offers the dual point of a barrier state and the decomposition read off its multipliers.
void offer_state(Problem& p, const std::vector<detail::DualPiece>& pieces, const detail::BarrierState& st) {
  const int d = static_cast<int>(p.x().size());
  p.offer_dual(st.y);
  // Reconstruct (x, 1) = sum_j c_j (a_j, 1) + nu (0, 1): the last row is the budget, with the
  // multiplier of s >= 0 as its slack, so that sum_j c_j <= 1 holds exactly.
  std::vector<Vector> lifted;
  lifted.reserve(pieces.size() + 1);
  for (const auto& piece : pieces) {
    Vector a(d + 1);
    a << piece.atom(st.y), 1.0;
    lifted.push_back(std::move(a));
  }
  lifted.push_back(Vector::Unit(d + 1, d));
  std::vector<double> mu = st.multipliers;
  mu.push_back(st.epigraph_multiplier);
  Vector target(d + 1);
  target << p.x(), 1.0;
  const std::vector<double> c = detail::reconstruct(target, lifted, mu);
  std::map<std::vector<int>, Vector> merged;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    if (!(c[j] > 0.0)) continue;
    auto [it, inserted] = merged.try_emplace(pieces[j].support.indices(), Vector::Zero(d));
    it->second += c[j] * lifted[j].head(d);
  }
  std::vector<Vector> blocks;
  blocks.reserve(merged.size());
  for (auto& [key, v] : merged) blocks.push_back(std::move(v));
  p.offer_blocks("barrier", std::move(blocks));
}

bool run_barrier(Problem& p, const KNormFamily& f, const PhiFunction& phi, double gap_tol, double radius) {
  const int d = f.dim();
  std::vector<int> levels(static_cast<std::size_t>(d));
  std::iota(levels.begin(), levels.end(), 1);
  const std::vector<detail::DualPiece> pieces = detail::make_dual_pieces(f.source(), d, levels, phi.values());
  detail::DualBarrier barrier(p.x(), pieces, true, radius);
  bool box_hit = false;
  barrier.solve([&](const detail::BarrierState& st) {
    offer_state(p, pieces, st);
    box_hit = st.y.norm() > 0.5 * radius;
    return p.upper() - p.lower() <= 1e-3 * gap_tol * std::max(1.0, p.upper()) || st.t > 1e12;
  });
  return box_hit;
}

// Column generation for sources without second-order pieces: the atoms found so far enter as
// linear pieces <a, y> <= phi(|supp a|) + s, and each round adds the top-l atoms that the
// restricted solution violates.
class ColumnSet {
 public:
  ColumnSet(const KNormFamily& f, const PhiFunction& phi) : f_(f), phi_(phi) {}

  bool add(const Vector& a) {
    const int level = block_level(a);
    if (level == 0) return false;
    for (const auto& p : pieces_) {
      if ((p.direction - a).cwiseAbs().maxCoeff() <= 1e-13) return false;
    }
    std::vector<int> K;
    for (int i = 0; i < a.size(); ++i) {
      if (a[i] != 0.0) K.push_back(i);
    }
    detail::DualPiece p;
    p.shape = detail::DualPiece::Shape::linear;
    p.support = IndexSet(std::move(K));
    p.level = level;
    p.weight = phi_(level);
    p.direction = a;
    pieces_.push_back(std::move(p));
    return true;
  }

  // Adds the exposed atom of every level; true when one of them was new.
  bool add_exposed(const Vector& y) {
    bool added = false;
    for (int l = 1; l <= f_.dim(); ++l) added = add(top_k_atom(f_, y, l)) || added;
    return added;
  }

  const std::vector<detail::DualPiece>& pieces() const { return pieces_; }

 private:
  const KNormFamily& f_;
  const PhiFunction& phi_;
  std::vector<detail::DualPiece> pieces_;
};

bool run_columns(Problem& p, const KNormFamily& f, const PhiFunction& phi, double gap_tol, double radius,
                 const Vector& y_start, int rounds) {
  const int d = f.dim();
  ColumnSet cols(f, phi);
  for (int i = 0; i < d; ++i) {
    const Vector e = Vector::Unit(d, i);
    const double ne = norm(f.source(), e);
    cols.add(e / ne);
    cols.add(-e / ne);
  }
  cols.add_exposed(p.x());
  if (y_start.cwiseAbs().maxCoeff() > 0.0) cols.add_exposed(y_start);

  bool box_hit = false;
  for (int round = 0; round < rounds; ++round) {
    const auto& pieces = cols.pieces();
    const double m = static_cast<double>(pieces.size());
    detail::DualBarrier barrier(p.x(), pieces, true, radius);
    const detail::BarrierState st = barrier.solve([&](const detail::BarrierState& s) {
      offer_state(p, pieces, s);
      return s.t > 1e13 * m;
    });
    box_hit = st.y.norm() > 0.5 * radius;
    if (p.upper() - p.lower() <= 1e-3 * gap_tol * std::max(1.0, p.upper())) break;
    if (!cols.add_exposed(st.y)) break;
  }
  return box_hit;
}

}  // namespace

BracketedValue eval_L0(const KNormFamily& f, const PhiFunction& phi, const Vector& x_in,
                       const FactorizationOptions& opts) {
  if (phi.dim() != f.dim()) throw ArgumentError("eval_L0: phi has the wrong dimension");
  phi.require_factorizable("eval_L0");
  f.check(x_in, "eval_L0");
  const int d = f.dim();

  if (x_in.cwiseAbs().maxCoeff() == 0.0) {
    BracketedValue z;
    z.method = "zero";
    z.witness = Decomposition::zeros(d);
    z.dual_witness = Vector::Zero(d);
    return z;
  }
  const double n_in = norm(f.source(), x_in);
  if (n_in > 1.0 + 1e-9) {
    BracketedValue inf;
    inf.method = "infeasible";
    inf.infinite = true;
    inf.lower = inf.upper = kInf;
    return inf;
  }
  // Within 1e-9 outside the ball: pull back onto the sphere.
  const Vector x = n_in > 1.0 ? Vector(x_in / n_in) : x_in;
  const double nx = norm(f.source(), x);
  const bool sphere = std::abs(nx - 1.0) <= 1e-9;

  if (sphere && opts.sphere_shortcut && f.osm_pair()) {
    Problem p(f, phi, x);
    p.offer_blocks("single-block", {x});
    p.offer_dual(subgradient_construct(f, phi, x).y);
    return p.result("sphere");
  }

  Problem p(f, phi, x);
  offer_splits(p, f.source());
  const Vector y0 = ray_direction(f, x);
  const double lambda = best_ray_scale(f, phi, x, y0);
  p.offer_dual(lambda * y0);

  const double tol = opts.gap_tol * std::max(1.0, p.upper());
  std::string method = "barrier";
  if (p.upper() - p.lower() > 1e-3 * tol) {
    const bool lp = f.source().is_lp();
    if (!lp) method = "columns";
    double radius = 4.0 * (1.0 + lambda) + 4.0 * (1.0 + phi(d));
    for (int attempt = 0; attempt < 8; ++attempt) {
      const bool box_hit = lp ? run_barrier(p, f, phi, opts.gap_tol, radius)
                              : run_columns(p, f, phi, opts.gap_tol, radius, lambda * y0, opts.max_iters);
      if (!box_hit || p.upper() - p.lower() <= tol) break;
      radius *= 8.0;
    }
  } else {
    method = "ray";
  }

  BracketedValue out = p.result(method);
  if (out.upper - out.lower > opts.gap_tol * std::max(1.0, out.upper)) {
    throw ConvergenceError("eval_L0: bracket wider than the gap tolerance", out.lower, out.upper);
  }
  return out;
}

VariationalValue variational_phi_l0(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                    const FactorizationOptions& opts) {
  f.check(x, "variational_phi_l0");
  const int l = l0(x);
  if (x.cwiseAbs().maxCoeff() == 0.0) throw ArgumentError("variational_phi_l0: x must be nonzero");
  if (!f.osm_pair()) {
    throw UnsupportedError("variational_phi_l0: the source and its dual must be orthant-strictly monotonic");
  }
  FactorizationOptions solver = opts;
  solver.sphere_shortcut = false;
  const BracketedValue b = eval_L0(f, phi, normalize(f.source(), x), solver);

  VariationalValue out;
  out.value = l == 0 ? 0.0 : phi(l);
  out.lower = b.lower;
  out.upper = b.upper;
  out.best_candidate = kInf;
  for (const auto& [label, cost] : b.candidates) {
    if (label != "single-block" && cost < out.best_candidate) {
      out.best_candidate = cost;
      out.best_label = label;
    }
  }
  if (b.upper < out.value - 1e-6 || b.lower > out.value + 1e-6) {
    throw InconsistencyError("variational_phi_l0: solver bracket excludes phi(l0(x))");
  }
  out.witness = Decomposition::zeros(f.dim());
  if (l > 0) {
    out.witness.parts[static_cast<std::size_t>(l - 1)] = x;
    out.witness.part_bounds[static_cast<std::size_t>(l - 1)] = norm(f.source(), x);
  }
  return out;
}

namespace {

Vector random_sphere_point(const KNormFamily& f, std::mt19937_64& rng) {
  const int d = f.dim();
  std::normal_distribution<double> gauss;
  const int k = std::uniform_int_distribution<int>(1, d)(rng);
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  Vector s = Vector::Zero(d);
  for (int a = 0; a < k; ++a) {
    double v = 0.0;
    while (std::abs(v) < 1e-3) v = gauss(rng);
    s[idx[static_cast<std::size_t>(a)]] = v;
  }
  return normalize(f.source(), s);
}

}  // namespace

SphereReport sphere_coincidence_check(const KNormFamily& f, const PhiFunction& phi, int samples, std::uint64_t seed,
                                      const FactorizationOptions& opts) {
  SphereReport r;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vector pt = random_sphere_point(f, rng);
    const double target = phi(l0(pt));
    double res = 0.0;
    try {
      const BracketedValue b = eval_L0(f, phi, pt, opts);
      res = std::max(std::abs(b.lower - target), std::abs(b.upper - target));
    } catch (const ConvergenceError& e) {
      res = std::max(std::abs(e.lower() - target), std::abs(e.upper() - target));
    }
    ++r.samples;
    if (res > 1e-6) ++r.failures;
    if (res >= r.max_residual) {
      r.max_residual = res;
      r.worst = pt;
    }
  }
  r.ok = r.failures == 0;
  return r;
}

CoincidenceReport rm_subdiff_coincidence_check(const KNormFamily& f, const PhiFunction& phi, const Vector& s,
                                               const Vector& y, std::uint64_t seed,
                                               const FactorizationOptions& opts) {
  f.check(s, "rm_subdiff_coincidence_check");
  f.check(y, "rm_subdiff_coincidence_check");
  if (std::abs(norm(f.source(), s) - 1.0) > 1e-9) {
    throw ArgumentError("rm_subdiff_coincidence_check: s must lie on the unit sphere");
  }
  const int d = f.dim();
  CoincidenceReport r;
  r.member = subdiff_membership(f, phi, s, y, 1e-8).member;
  const double at_s = eval_L0(f, phi, s, opts).value();

  // Probe panel: origin, signed basis directions, the half point, exposed atoms, random points.
  std::vector<Vector> panel;
  panel.push_back(Vector::Zero(d));
  for (int i = 0; i < d; ++i) {
    const Vector e = normalize(f.source(), Vector::Unit(d, i));
    panel.push_back(e);
    panel.push_back(-e);
  }
  panel.push_back(0.5 * s);
  for (int l = 1; l <= d; ++l) {
    const Vector a = top_k_atom(f, y, l);
    if (a.cwiseAbs().maxCoeff() == 0.0) continue;
    const Vector u = normalize(f.source(), a);
    panel.push_back(u);
    panel.push_back(0.5 * (u + s));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  for (int k = 0; k < 12; ++k) panel.push_back(random_sphere_point(f, rng));
  for (int k = 0; k < 6; ++k) panel.push_back(radius(rng) * random_sphere_point(f, rng));

  r.inequality_holds = true;
  r.min_slack = kInf;
  for (const Vector& xp : panel) {
    ++r.probes;
    double upper;
    try {
      upper = eval_L0(f, phi, xp, opts).upper;
    } catch (const ConvergenceError& e) {
      upper = e.upper();
    }
    const double slack = upper - at_s - y.dot(xp - s);
    if (slack < r.min_slack) r.min_slack = slack;
    if (slack < -1e-6 && r.inequality_holds) {
      r.inequality_holds = false;
      r.violating_probe = xp;
    }
  }
  r.agree = r.member == r.inequality_holds;
  return r;
}

}  // namespace capra
