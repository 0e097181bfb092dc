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

#include <capra/knorms.hpp>

#include <capra/detail/dual_barrier.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace capra {

KNormFamily::KNormFamily(SourceNorm source, int dim) : source_(std::move(source)), dim_(dim) {
  if (dim < 1) throw ArgumentError("KNormFamily: dimension must be positive");
}

void KNormFamily::check(const Vector& v, const char* what) const {
  require_finite(v, what);
  if (v.size() != dim_) throw ArgumentError(std::string(what) + ": dimension mismatch");
}

namespace {

void check_level(const KNormFamily& f, int k, int lo, const char* what) {
  if (k < lo || k > f.dim()) throw ArgumentError(std::string(what) + ": k out of range");
}

void require_enumerable(const KNormFamily& f, const char* what) {
  if (f.dim() > kEnumDimCap) throw UnsupportedError(std::string(what) + ": dimension above the enumeration cap");
}

// Indices ordered by decreasing modulus, ties by increasing index.
std::vector<int> magnitude_order(const Vector& y) {
  std::vector<int> order(static_cast<std::size_t>(y.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(y[a]) > std::abs(y[b]); });
  return order;
}

bool use_fast_path(const KNormFamily& f, KPath path) {
  return path == KPath::automatic && f.source().permutation_invariant_monotonic();
}

}  // namespace

TopKValue top_k_dual_norm_support(const KNormFamily& f, const Vector& y, int k, KPath path) {
  f.check(y, "top_k_dual_norm");
  check_level(f, k, 0, "top_k_dual_norm");
  TopKValue out;
  if (k == 0) return out;

  if (use_fast_path(f, path)) {
    const std::vector<int> order = magnitude_order(y);
    out.support = IndexSet(std::vector<int>(order.begin(), order.begin() + k));
    out.value = lp_norm(restrict(y, out.support), f.source().dual_exponent());
    return out;
  }

  require_enumerable(f, "top_k_dual_norm");
  const int lo = f.orthant_monotonic() ? k : 1;
  bool first = true;
  for (int size = lo; size <= k; ++size) {
    for_each_subset(f.dim(), size, [&](const IndexSet& K) {
      const double v = dual_norm(f.source(), restrict(y, K));
      if (first || v > out.value) {
        out.value = v;
        out.support = K;
        first = false;
      }
    });
  }
  return out;
}

double top_k_dual_norm(const KNormFamily& f, const Vector& y, int k, KPath path) {
  return top_k_dual_norm_support(f, y, k, path).value;
}

std::vector<double> top_k_chain(const KNormFamily& f, const Vector& y, KPath path) {
  f.check(y, "top_k_chain");
  const int d = f.dim();
  std::vector<double> chain(static_cast<std::size_t>(d + 1), 0.0);

  if (use_fast_path(f, path)) {
    const LpExponent q = f.source().dual_exponent();
    const std::vector<int> order = magnitude_order(y);
    const double scale = std::abs(y[order.front()]);
    if (scale == 0.0) return chain;
    double acc = 0.0;
    for (int k = 1; k <= d; ++k) {
      const double a = std::abs(y[order[static_cast<std::size_t>(k - 1)]]);
      if (q.is_infinite()) {
        chain[static_cast<std::size_t>(k)] = scale;
      } else if (q.value() == 1.0) {
        acc += a;
        chain[static_cast<std::size_t>(k)] = acc;
      } else {
        acc += std::pow(a / scale, q.value());
        chain[static_cast<std::size_t>(k)] = scale * std::pow(acc, 1.0 / q.value());
      }
    }
    return chain;
  }

  require_enumerable(f, "top_k_chain");
  for (int size = 1; size <= d; ++size) {
    double best = 0.0;
    for_each_subset(d, size, [&](const IndexSet& K) { best = std::max(best, dual_norm(f.source(), restrict(y, K))); });
    chain[static_cast<std::size_t>(size)] = std::max(best, chain[static_cast<std::size_t>(size - 1)]);
  }
  return chain;
}

Vector top_k_atom(const KNormFamily& f, const Vector& y, int k) {
  const TopKValue top = top_k_dual_norm_support(f, y, k);
  const Vector yk = restrict(y, top.support);
  if (f.source().is_lp()) return restricted_ball_maximum(f.source(), yk, top.support).argmax;
  // For a general norm the exposed atom is the projection onto R_K of a maximizer over the ball.
  return restrict(restricted_ball_maximum(f.source(), yk, IndexSet::full(f.dim())).argmax, top.support);
}

namespace {

// Splits v into blocks of at most k nonzero entries (consecutive along the support).
std::vector<Vector> sparse_chunks(const Vector& v, int k) {
  std::vector<Vector> out;
  std::vector<int> supp;
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) supp.push_back(i);
  }
  for (std::size_t start = 0; start < supp.size(); start += static_cast<std::size_t>(k)) {
    Vector block = Vector::Zero(v.size());
    for (std::size_t a = start; a < std::min(start + static_cast<std::size_t>(k), supp.size()); ++a) {
      block[supp[a]] = v[supp[a]];
    }
    out.push_back(std::move(block));
  }
  return out;
}

double blocks_cost(const SourceNorm& n, const std::vector<Vector>& blocks) {
  double c = 0.0;
  for (const Vector& b : blocks) c += norm(n, b);
  return c;
}

struct Bracket {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<Vector> blocks;
  Vector dual;
};

Bracket ksupport_barrier(const KNormFamily& f, const Vector& x, int k, const KSupportOptions& opts) {
  const int d = f.dim();
  std::vector<double> weights(static_cast<std::size_t>(d + 1), 0.0);
  weights[static_cast<std::size_t>(k)] = 1.0;
  detail::DualBarrier barrier(x, detail::make_dual_pieces(f.source(), d, {k}, weights), false);

  Bracket best;
  best.blocks = sparse_chunks(x, k);
  best.upper = blocks_cost(f.source(), best.blocks);

  barrier.solve([&](const detail::BarrierState& st) {
    const double top = top_k_dual_norm(f, st.y, k);
    if (top > 0.0) {
      const double lower = x.dot(st.y) / top;
      if (lower > best.lower) {
        best.lower = lower;
        best.dual = st.y / top;
      }
    }
    // Primal recovery: x = sum_j c_j grad f_j(y) with c close to the multipliers, merged per support,
    // plus a residual fix.
    const auto& pieces = barrier.pieces();
    std::vector<Vector> atoms;
    atoms.reserve(pieces.size());
    for (const auto& p : pieces) atoms.push_back(p.atom(st.y));
    const std::vector<double> c = detail::reconstruct(x, atoms, st.multipliers);
    std::map<std::vector<int>, Vector> merged;
    Vector sum = Vector::Zero(d);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (!(c[j] > 0.0)) continue;
      const Vector a = c[j] * atoms[j];
      auto [it, inserted] = merged.try_emplace(pieces[j].support.indices(), Vector::Zero(d));
      it->second += a;
      sum += a;
    }
    std::vector<Vector> blocks;
    blocks.reserve(merged.size());
    for (auto& [key, v] : merged) {
      if (v.cwiseAbs().maxCoeff() > 0.0) blocks.push_back(std::move(v));
    }
    for (Vector& c : sparse_chunks(x - sum, k)) blocks.push_back(std::move(c));
    const double upper = blocks_cost(f.source(), blocks);
    if (upper < best.upper) {
      best.upper = upper;
      best.blocks = std::move(blocks);
    }
    return best.upper - best.lower <= 1e-2 * opts.gap_tol * best.upper || st.t > 1e13;
  });
  return best;
}

// Column generation for sources without second-order pieces. The dual restricted to the atoms
// found so far, max <x, y> s.t. <a, y> <= 1, is solved by the barrier with linear pieces; the atom
// exposed by its solution joins the set until the bracket closes.
Bracket ksupport_columns(const KNormFamily& f, const Vector& x, int k, const KSupportOptions& opts) {
  const int d = f.dim();
  Bracket best;
  best.blocks = sparse_chunks(x, k);
  best.upper = blocks_cost(f.source(), best.blocks);

  std::vector<detail::DualPiece> pieces;
  auto add = [&](const Vector& a) {
    std::vector<int> K;
    for (int i = 0; i < d; ++i) {
      if (a[i] != 0.0) K.push_back(i);
    }
    if (K.empty()) return false;
    for (const auto& p : pieces) {
      if ((p.direction - a).cwiseAbs().maxCoeff() <= 1e-13) return false;
    }
    detail::DualPiece p;
    p.shape = detail::DualPiece::Shape::linear;
    p.support = IndexSet(std::move(K));
    p.level = p.support.size();
    p.weight = 1.0;
    p.direction = a;
    pieces.push_back(std::move(p));
    return true;
  };
  // Signed unit vectors keep the restricted dual bounded.
  for (int i = 0; i < d; ++i) {
    const Vector e = Vector::Unit(d, i);
    const double ne = norm(f.source(), e);
    add(e / ne);
    add(-e / ne);
  }
  add(top_k_atom(f, x, k));

  for (int round = 0; round < opts.max_iters; ++round) {
    const detail::DualBarrier barrier(x, pieces, false);
    const double m = static_cast<double>(pieces.size());
    const detail::BarrierState st = barrier.solve([&](const detail::BarrierState& s) { return s.t > 1e13 * m; });

    std::vector<Vector> atoms;
    atoms.reserve(pieces.size());
    for (const auto& p : pieces) atoms.push_back(p.direction);
    const std::vector<double> c = detail::reconstruct(x, atoms, st.multipliers);
    std::map<std::vector<int>, Vector> merged;
    Vector sum = Vector::Zero(d);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (!(c[j] > 0.0)) continue;
      auto [it, inserted] = merged.try_emplace(pieces[j].support.indices(), Vector::Zero(d));
      it->second += c[j] * atoms[j];
      sum += c[j] * atoms[j];
    }
    std::vector<Vector> blocks;
    for (auto& [key, v] : merged) blocks.push_back(std::move(v));
    for (Vector& r : sparse_chunks(x - sum, k)) blocks.push_back(std::move(r));
    const double upper = blocks_cost(f.source(), blocks);
    if (upper < best.upper) {
      best.upper = upper;
      best.blocks = std::move(blocks);
    }

    const Vector a = top_k_atom(f, st.y, k);
    const double top = a.dot(st.y);
    if (top > 0.0 && x.dot(st.y) / top > best.lower) {
      best.lower = x.dot(st.y) / top;
      best.dual = st.y / top;
    }
    if (best.upper - best.lower <= 1e-2 * opts.gap_tol * best.upper) break;
    if (!add(a)) break;
  }
  return best;
}

KSupportValue exact(double v, const char* method) {
  KSupportValue out;
  out.value = out.lower = out.upper = v;
  out.method = method;
  return out;
}

}  // namespace

KSupportValue k_support_dual_norm_bracket(const KNormFamily& f, const Vector& x, int k, KPath path,
                                          const KSupportOptions& opts) {
  f.check(x, "k_support_dual_norm");
  check_level(f, k, 0, "k_support_dual_norm");
  const SourceNorm& n = f.source();
  if (x.cwiseAbs().maxCoeff() == 0.0) return exact(0.0, "zero");
  if (k == 0) throw ArgumentError("k_support_dual_norm: k = 0 is only defined at x = 0");

  if (path == KPath::automatic) {
    if (k == f.dim()) return exact(norm(n, x), "full");
    if (l0(x) <= k) return exact(norm(n, x), "sparse");
    if (n.is_lp()) {
      const LpExponent& p = n.exponent();
      if (p.is_infinite()) return exact(std::max(x.cwiseAbs().sum() / k, x.cwiseAbs().maxCoeff()), "linf");
      if (p.value() == 1.0 || k == 1) return exact(x.cwiseAbs().sum(), p.value() == 1.0 ? "l1" : "k1");
    } else if (k == 1) {
      // top_1(y) = max_i |y_i| |||e_i|||_*, whose dual is sum_i |x_i| / |||e_i|||_*.
      double v = 0.0;
      for (int i = 0; i < f.dim(); ++i) {
        if (x[i] != 0.0) v += std::abs(x[i]) / dual_norm(n, Vector::Unit(f.dim(), i));
      }
      return exact(v, "k1");
    }
  }

  const double scale = x.cwiseAbs().maxCoeff();
  const Vector xs = x / scale;
  Bracket b;
  KSupportValue out;
  if (n.is_lp()) {
    b = ksupport_barrier(f, xs, k, opts);
    out.method = "barrier";
  } else {
    require_enumerable(f, "k_support_dual_norm");
    b = ksupport_columns(f, xs, k, opts);
    out.method = "columns";
  }
  out.lower = b.lower * scale;
  out.upper = b.upper * scale;
  out.value = 0.5 * (out.lower + out.upper);
  for (Vector& v : b.blocks) out.blocks.push_back(v * scale);
  out.dual_witness = b.dual;
  if (out.upper - out.lower > opts.gap_tol * std::max(out.upper, 1e-300)) {
    throw ConvergenceError("k_support_dual_norm: bracket wider than the gap tolerance", out.lower, out.upper);
  }
  return out;
}

double k_support_dual_norm(const KNormFamily& f, const Vector& x, int k, KPath path, const KSupportOptions& opts) {
  return k_support_dual_norm_bracket(f, x, k, path, opts).value;
}

double coordinate_k_dual_norm(const KNormFamily& f, const Vector& y, int k) {
  f.check(y, "coordinate_k_dual_norm");
  check_level(f, k, 1, "coordinate_k_dual_norm");
  if (f.orthant_monotonic()) return top_k_dual_norm(f, y, k);
  require_enumerable(f, "coordinate_k_dual_norm");
  double best = 0.0;
  for (int size = 1; size <= k; ++size) {
    for_each_subset(f.dim(), size, [&](const IndexSet& K) {
      best = std::max(best, restricted_ball_maximum(f.source(), y, K).value);
    });
  }
  return best;
}

NestingReport ball_nesting_check(const KNormFamily& f, int samples, std::uint64_t seed) {
  const int d = f.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> sparsity(1, d);
  NestingReport report;
  const double slack = 1e-9;
  // The top layer is recomputed on the generic path where one exists, so the identity is not trivial.
  const bool generic_layer = f.source().is_lp();

  for (int s = 0; s < samples && !report.violation; ++s) {
    ++report.samples;
    Vector x(d);
    Vector y(d);
    for (int i = 0; i < d; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    if (s % 2 == 1) {
      // Sparse sample: keep a random number of leading magnitudes.
      const int keep = sparsity(rng);
      std::vector<int> idx(static_cast<std::size_t>(d));
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int a = keep; a < d; ++a) x[idx[static_cast<std::size_t>(a)]] = 0.0;
    }

    std::vector<KSupportValue> sn;
    for (int k = 1; k <= d; ++k) sn.push_back(k_support_dual_norm_bracket(f, x, k));
    const double nx = norm(f.source(), x);
    for (int k = 1; k < d; ++k) {
      const auto& a = sn[static_cast<std::size_t>(k - 1)];
      const auto& b = sn[static_cast<std::size_t>(k)];
      if (a.upper < b.lower - slack * (1.0 + nx)) {
        report.ok = false;
        report.violation = NestingViolation{"support", k, x, a.value, b.value};
        break;
      }
    }
    // Distance from |||x||| to the certified bracket of the top layer.
    const KSupportValue top_layer = generic_layer ? k_support_dual_norm_bracket(f, x, d, KPath::generic) : sn.back();
    const double off = std::max({0.0, top_layer.lower - nx, nx - top_layer.upper});
    report.max_layer_residual = std::max(report.max_layer_residual, off / (1.0 + nx));
    if (report.violation) break;

    const std::vector<double> chain = top_k_chain(f, y);
    const double ny = dual_norm(f.source(), y);
    for (int k = 1; k < d; ++k) {
      if (chain[static_cast<std::size_t>(k)] > chain[static_cast<std::size_t>(k + 1)] + 1e-12 * (1.0 + ny)) {
        report.ok = false;
        report.violation =
            NestingViolation{"top", k, y, chain[static_cast<std::size_t>(k)], chain[static_cast<std::size_t>(k + 1)]};
        break;
      }
    }
    report.max_layer_residual =
        std::max(report.max_layer_residual, std::abs(chain[static_cast<std::size_t>(d)] - ny) / (1.0 + ny));
  }
  if (report.max_layer_residual > slack && !report.violation) {
    report.ok = false;
    report.violation = NestingViolation{"layer", d, Vector(), report.max_layer_residual, 0.0};
  }
  return report;
}

}  // namespace capra
