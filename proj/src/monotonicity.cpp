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

#include <capra/monotonicity.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace capra {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::passes: return "passes";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(MonotoneProperty p) { return p == MonotoneProperty::om ? "OM" : "OSM"; }

namespace {

constexpr double kMonotoneTol = 1e-12;

// Stratified pairs (x, x') with x o x' >= 0, |x| <= |x'| and one coordinate strictly shrunk.
// Strata rotate between masking, uniform shrinking and single-coordinate shrinking.
std::pair<Vector, Vector> sample_pair(std::mt19937_64& rng, int d, int stratum) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  Vector xp = Vector::Zero(d);
  std::vector<int> supp;
  while (supp.empty()) {
    for (int i = 0; i < d; ++i) {
      if (unit(rng) < 0.7) supp.push_back(i);
    }
  }
  for (int i : supp) xp[i] = (unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng);

  Vector x = xp;
  const int j = supp[std::uniform_int_distribution<std::size_t>(0, supp.size() - 1)(rng)];
  switch (stratum % 3) {
    case 0:
      for (int i : supp) {
        if (unit(rng) < 0.5) x[i] = 0.0;
      }
      break;
    case 1:
      for (int i : supp) x[i] *= unit(rng);
      break;
    default:
      break;
  }
  const double shrink = unit(rng) < 0.25 ? 0.0 : 0.9 * unit(rng);
  x[j] = xp[j] * shrink;
  return {x, xp};
}

bool dominated(const Vector& x, const Vector& xp, bool strict) {
  if (x.size() != xp.size()) return false;
  bool some_strict = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(xp[i]) || x[i] * xp[i] < 0.0) return false;
    if (std::abs(x[i]) < std::abs(xp[i])) some_strict = true;
  }
  return !strict || some_strict;
}

bool violates(const SourceNorm& n, MonotoneProperty p, const Vector& x, const Vector& xp) {
  const double a = norm(n, x);
  const double b = norm(n, xp);
  return p == MonotoneProperty::om ? a > b + kMonotoneTol : a >= b - kMonotoneTol;
}

MonotonicityReport sampled_check(const SourceNorm& n, MonotoneProperty p, int dim, int samples, std::uint64_t seed) {
  MonotonicityReport r;
  r.property = p;
  if (dim < 1) throw ArgumentError("monotonicity check: dimension must be positive");
  if (samples <= 0) return r;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    auto [x, xp] = sample_pair(rng, dim, s);
    ++r.samples_used;
    if (violates(n, p, x, xp)) {
      r.verdict = Verdict::fails;
      r.counterexample = std::make_pair(std::move(x), std::move(xp));
      return r;
    }
  }
  r.verdict = Verdict::passes;
  return r;
}

}  // namespace

bool recheck_counterexample(const SourceNorm& n, MonotoneProperty p, const Vector& x, const Vector& xp) {
  return dominated(x, xp, p == MonotoneProperty::osm) && violates(n, p, x, xp);
}

MonotonicityReport check_orthant_monotonic(const SourceNorm& n, int dim, int samples, std::uint64_t seed) {
  if (n.is_lp()) {
    MonotonicityReport r;
    r.verdict = Verdict::passes;
    r.property = MonotoneProperty::om;
    r.analytic = true;
    return r;
  }
  return sampled_check(n, MonotoneProperty::om, dim, samples, seed);
}

MonotonicityReport check_orthant_strictly_monotonic(const SourceNorm& n, int dim, int samples, std::uint64_t seed) {
  if (n.is_lp()) {
    MonotonicityReport r;
    r.property = MonotoneProperty::osm;
    r.analytic = true;
    // In dimension one every lp norm is |x|.
    if (!n.exponent().is_infinite() || dim < 2) {
      r.verdict = Verdict::passes;
      return r;
    }
    Vector x = Vector::Zero(dim);
    Vector xp = Vector::Zero(dim);
    x[0] = 1.0;
    xp[0] = 1.0;
    xp[1] = 1.0;
    r.verdict = Verdict::fails;
    r.counterexample = std::make_pair(x, xp);
    return r;
  }
  return sampled_check(n, MonotoneProperty::osm, dim, samples, seed);
}

SourceNorm dual_as_source(const SourceNorm& n) {
  if (n.is_lp()) return SourceNorm::lp(n.dual_exponent());
  const CustomNorm& c = *n.custom_spec();
  CustomNorm d;
  d.name = c.name + "*";
  d.eval = [n](const Vector& y) { return dual_norm(n, y); };
  d.dual = [n](const Vector& x) { return norm(n, x); };
  // The dual of an orthant-monotonic norm is orthant-monotonic.
  d.orthant_monotonic = c.orthant_monotonic;
  d.orthant_strictly_monotonic = c.dual_orthant_strictly_monotonic;
  d.dual_orthant_strictly_monotonic = c.orthant_strictly_monotonic;
  d.oracle_dim_cap = c.oracle_dim_cap;
  return SourceNorm::custom(std::move(d));
}

Vector support_preserving_dual_pair(const SourceNorm& n, const Vector& u) {
  require_finite(u, "support_preserving_dual_pair");
  const IndexSet K = IndexSet::support(u);
  if (K.empty()) throw ArgumentError("support_preserving_dual_pair: u must be nonzero");

  Vector v;
  if (n.is_lp()) {
    v = lp_duality_map(u, n.exponent());
  } else {
    const std::function<double(const Vector&)> g = [&n](const Vector& y) { return dual_norm(n, y); };
    v = detail::numeric_ball_maximum(g, u, K).argmax;
  }

  const double vmax = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const bool in = K.contains(static_cast<int>(i));
    if (in && !(u[i] * v[i] > 0.0 && std::abs(v[i]) > 1e-9 * vmax)) {
      throw ConstructionError("support_preserving_dual_pair: dual partner loses a support coordinate");
    }
    if (!in && v[i] != 0.0) throw ConstructionError("support_preserving_dual_pair: dual partner leaves the support");
  }
  if (!is_dual_pair(n, u, v, 1e-9)) throw ConstructionError("support_preserving_dual_pair: not a dual pair");
  return v;
}

StrictChainReport strict_chain_check(const KNormFamily& f, const Vector& y) {
  StrictChainReport r;
  r.chain = top_k_chain(f, y);
  r.level = l0(y);
  const int d = f.dim();
  const double ny = dual_norm(f.source(), y);
  r.min_strict_gap = std::numeric_limits<double>::infinity();
  for (int k = 1; k < r.level; ++k) {
    const double gap = r.chain[static_cast<std::size_t>(k + 1)] - r.chain[static_cast<std::size_t>(k)];
    r.min_strict_gap = std::min(r.min_strict_gap, gap);
    if (gap <= kMonotoneTol && !r.failing_index) r.failing_index = k;
  }
  for (int k = std::max(r.level, 1); k <= d; ++k) {
    const double res = std::abs(r.chain[static_cast<std::size_t>(k)] - ny);
    r.max_tail_residual = std::max(r.max_tail_residual, res);
    if (res > 1e-9 * (1.0 + ny) && !r.failing_index) r.failing_index = k;
  }
  r.ok = !r.failing_index.has_value();
  return r;
}

namespace {

// Homogeneity, triangle inequality and definiteness on random samples.
void sample_norm_axioms(const SourceNorm& n, int dim, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5ULL);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int s = 0; s < samples; ++s) {
    Vector a(dim);
    Vector b(dim);
    for (int i = 0; i < dim; ++i) {
      a[i] = gauss(rng);
      b[i] = gauss(rng);
    }
    const double na = norm(n, a);
    const double nb = norm(n, b);
    const double rho = scale(rng);
    if (!(na > 0.0)) throw InvalidNormError("custom norm vanishes at a nonzero vector");
    if (std::abs(norm(n, rho * a) - rho * na) > 1e-9 * (1.0 + rho * na)) {
      throw InvalidNormError("custom norm is not positively homogeneous");
    }
    if (std::abs(norm(n, -a) - na) > 1e-9 * (1.0 + na)) throw InvalidNormError("custom norm is not symmetric");
    if (norm(n, a + b) > na + nb + 1e-9 * (1.0 + na + nb)) {
      throw InvalidNormError("custom norm violates the triangle inequality");
    }
  }
  if (norm(n, Vector::Zero(dim)) != 0.0) throw InvalidNormError("custom norm is nonzero at the origin");
}

}  // namespace

KNormFamily make_verified_family(const SourceNorm& n, int dim, int samples, std::uint64_t seed) {
  if (n.is_lp()) return KNormFamily(n, dim);
  const CustomNorm& c = *n.custom_spec();
  sample_norm_axioms(n, dim, std::min(samples, 500), seed);
  if (c.orthant_monotonic &&
      check_orthant_monotonic(n, dim, samples, seed).verdict == Verdict::fails) {
    throw ConstructionError("declared orthant-monotonic flag refuted by sampling");
  }
  if (c.orthant_strictly_monotonic &&
      check_orthant_strictly_monotonic(n, dim, samples, seed).verdict == Verdict::fails) {
    throw ConstructionError("declared orthant-strictly monotonic flag refuted by sampling");
  }
  if (c.dual_orthant_strictly_monotonic) {
    // Each dual evaluation may be a numerical maximization, so the dual gets a smaller budget.
    const int dual_samples = c.dual ? samples : std::min(samples, 200);
    if (check_orthant_strictly_monotonic(dual_as_source(n), dim, dual_samples, seed + 1).verdict == Verdict::fails) {
      throw ConstructionError("declared dual orthant-strictly monotonic flag refuted by sampling");
    }
  }
  return KNormFamily(n, dim);
}

}  // namespace capra
