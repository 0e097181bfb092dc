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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [seed]

#include "oracle.hpp"
#include "test_util.hpp"

#include <capra/capra.hpp>
#include <capra/factorization.hpp>
#include <capra/knorms.hpp>
#include <capra/monotonicity.hpp>
#include <capra/sparseopt.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace {

using capra::KNormFamily;
using capra::PhiFunction;
using capra::SourceNorm;
using capra::Vector;
using testutil::kInf;
using testutil::vec;

struct Outcome {
  bool ok = true;
  std::string detail;
};

KNormFamily lp_family(double p, int d) {
  return KNormFamily(std::isinf(p) ? SourceNorm::linf() : SourceNorm::lp(p), d);
}

const double kPs[] = {1.5, 2.0, 3.0};

std::vector<PhiFunction> phis(int d) { return {PhiFunction::identity(d), PhiFunction::squares(d)}; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1. closed forms against the library, both routes
Outcome table_identities(std::uint64_t seed) {
  testutil::Rng rng(seed);
  double worst_fast = 0.0, worst_generic = 0.0;
  for (int d = 3; d <= 5; ++d) {
    const KNormFamily l1 = lp_family(1.0, d), li = lp_family(kInf, d);
    const KNormFamily others[] = {lp_family(1.5, d), lp_family(2.0, d), lp_family(3.0, d)};
    for (int t = 0; t < 500; ++t) {
      const Vector x = t % 2 ? rng.dense(d) : rng.sparse_random_level(d);
      Vector a = x.cwiseAbs();
      std::sort(a.data(), a.data() + d, std::greater<>());
      const double n1 = a.sum(), ninf = a[0];
      auto record = [&](double got_fast, double got_generic, double want) {
        worst_fast = std::max(worst_fast, std::abs(got_fast - want));
        worst_generic = std::max(worst_generic, std::abs(got_generic - want) / std::max(1.0, want));
      };
      for (int k = 1; k <= d; ++k) {
        using capra::KPath;
        record(capra::top_k_dual_norm(l1, x, k), capra::top_k_dual_norm(l1, x, k, KPath::generic), ninf);
        record(capra::k_support_dual_norm(l1, x, k), capra::k_support_dual_norm(l1, x, k, KPath::generic), n1);
        const double topsum = a.head(k).sum();
        record(capra::top_k_dual_norm(li, x, k), capra::top_k_dual_norm(li, x, k, KPath::generic), topsum);
        const double sn = std::max(n1 / k, ninf);
        record(capra::k_support_dual_norm(li, x, k), capra::k_support_dual_norm(li, x, k, KPath::generic), sn);
      }
      for (const KNormFamily& f : others)
        record(capra::k_support_dual_norm(f, x, 1), capra::k_support_dual_norm(f, x, 1, capra::KPath::generic), n1);
    }
  }
  return {worst_fast <= 1e-9 && worst_generic <= 1e-6,
          fmt("max error analytic %.2e, generic %.2e", worst_fast, worst_generic)};
}

// 2. biconjugate equals phi(l0(x)); the lower bound is recomputed from the dual witness
Outcome capra_convexity(std::uint64_t seed) {
  testutil::Rng rng(seed);
  capra::FactorizationOptions opts;
  opts.sphere_shortcut = false;
  double worst = 0.0, worst_cert = 0.0;
  int runs = 0;
  for (double p : kPs)
    for (int d = 2; d <= 5; ++d)
      for (const PhiFunction& phi : phis(d)) {
        const KNormFamily f = lp_family(p, d);
        for (int t = 0; t < 100; ++t) {
          const Vector x = 3.0 * rng.sparse_random_level(d);
          const double target = phi(capra::l0(x));
          const capra::BracketedValue b = capra::capra_biconjugate(f, phi, x, opts);
          const Vector s = capra::normalize(f.source(), x);
          const double cert = oracle::dual_value(p, phi, s, b.dual_witness);
          worst = std::max(worst, std::abs(b.value() - target));
          worst_cert = std::max(worst_cert, target - cert);
          ++runs;
        }
      }
  return {worst <= 1e-6 && worst_cert <= 1e-6,
          fmt("%g points, max |value - phi(l0)| %.2e, max certificate shortfall %.2e", runs, worst, worst_cert)};
}

// 3. eval_L0 on the unit sphere, solver only
Outcome sphere_coincidence(std::uint64_t seed) {
  testutil::Rng rng(seed);
  capra::FactorizationOptions opts;
  opts.sphere_shortcut = false;
  double worst = 0.0;
  for (double p : kPs)
    for (int d = 2; d <= 5; ++d)
      for (const PhiFunction& phi : phis(d)) {
        const KNormFamily f = lp_family(p, d);
        for (int t = 0; t < 200; ++t) {
          const Vector s = rng.sphere(f.source(), d);
          worst = std::max(worst, std::abs(capra::eval_L0(f, phi, s, opts).value() - phi(capra::l0(s))));
        }
      }
  return {worst <= 1e-6, fmt("max |L0(s) - phi(l0(s))| %.2e", worst)};
}

// 4. a certified subgradient at every x, and 0 at the origin
Outcome subdiff_nonempty(std::uint64_t seed) {
  testutil::Rng rng(seed);
  int tried = 0, passed = 0;
  for (double p : kPs)
    for (int d = 2; d <= 5; ++d)
      for (const PhiFunction& phi : phis(d)) {
        const KNormFamily f = lp_family(p, d);
        for (int t = 0; t < 100; ++t) {
          const Vector x = 3.0 * rng.sparse_random_level(d);
          ++tried;
          try {
            const capra::SubgradientCertificate c = capra::subgradient_construct(f, phi, x);
            if (capra::subdiff_membership(f, phi, x, c.y, 1e-8).member) ++passed;
          } catch (const std::exception&) {
          }
        }
        ++tried;
        if (capra::subdiff_at_zero_membership(f, phi, Vector::Zero(d), 1e-8) &&
            capra::subdiff_membership(f, phi, Vector::Zero(d), Vector::Zero(d), 1e-8).member)
          ++passed;
      }
  return {passed == tried, fmt("%g of %g certificates accepted", passed, tried)};
}

// 5. convex combinations of two members stay members
Outcome subdiff_convexity(std::uint64_t seed) {
  testutil::Rng rng(seed);
  int pairs = 0, probes = 0, passed = 0, attempts = 0;
  while (pairs < 50 && attempts < 5000) {
    ++attempts;
    const double p = kPs[attempts % 3];
    const int d = rng.integer(2, 5);
    const PhiFunction phi = attempts % 2 ? PhiFunction::identity(d) : PhiFunction::squares(d);
    const KNormFamily f = lp_family(p, d);
    const Vector x = rng.sparse(d, rng.integer(1, d));
    const Vector y1 = capra::subgradient_construct(f, phi, x).y;
    // Candidate second member: scaled up, plus a random push off the support.
    Vector w = rng.dense(d);
    for (int i = 0; i < d; ++i)
      if (x[i] != 0.0) w[i] = 0.0;
    const Vector y2 = rng.uniform(1.0, 3.0) * y1 + rng.uniform(0.0, 0.5) * w;
    if (!capra::subdiff_membership(f, phi, x, y2, 1e-8).member || (y2 - y1).norm() < 1e-6) continue;
    ++pairs;
    for (double t : {0.25, 0.5, 0.75}) {
      ++probes;
      if (capra::subdiff_convexity_probe(f, phi, x, y1, y2, t, 1e-8)) ++passed;
    }
  }
  return {pairs == 50 && passed == probes, fmt("%g pairs, %g of %g combinations are members", pairs, passed, probes)};
}

// 6. strict chain for l2, and a failure for l1
Outcome strict_chain(std::uint64_t seed) {
  testutil::Rng rng(seed);
  int bad = 0, total = 0;
  double min_gap = kInf;
  for (int d = 2; d <= 5; ++d) {
    const KNormFamily f = lp_family(2.0, d);
    for (int l = 1; l <= d; ++l)
      for (int t = 0; t < 200; ++t) {
        const capra::StrictChainReport r = capra::strict_chain_check(f, rng.sparse(d, l));
        ++total;
        if (!r.ok || r.level != l || (l > 1 && !(r.min_strict_gap > 1e-10))) ++bad;
        if (l > 1) min_gap = std::min(min_gap, r.min_strict_gap);
      }
  }
  int l1_failures = 0;
  const KNormFamily g = lp_family(1.0, 4);
  for (int t = 0; t < 200; ++t)
    if (!capra::strict_chain_check(g, rng.sparse(4, rng.integer(2, 4))).ok) ++l1_failures;
  return {bad == 0 && l1_failures > 0,
          fmt("l2: %g of %g chains broken (min gap %.2e); ", bad, total, min_gap) +
              fmt("l1: %g of 200 chains not strict", l1_failures)};
}

// 7. verdicts for the lp family and the max norm
Outcome monotonicity(std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  for (double p : {1.0, 1.5, 2.0, 3.0})
    for (int d = 2; d <= 5; ++d) {
      const SourceNorm n = SourceNorm::lp(p);
      if (capra::check_orthant_strictly_monotonic(n, d, 500, seed).verdict != capra::Verdict::passes ||
          capra::check_orthant_monotonic(n, d, 500, seed).verdict != capra::Verdict::passes) {
        ok = false;
        detail += fmt("lp:%g d=%g not OSM; ", p, d);
      }
    }
  const SourceNorm inf = SourceNorm::linf();
  const capra::MonotonicityReport r = capra::check_orthant_strictly_monotonic(inf, 2, 500, seed);
  const bool witness = capra::recheck_counterexample(inf, capra::MonotoneProperty::osm, vec({1, 0}), vec({1, 1}));
  const bool reported = r.counterexample &&
                        capra::recheck_counterexample(inf, capra::MonotoneProperty::osm, r.counterexample->first,
                                                      r.counterexample->second);
  ok = ok && r.verdict == capra::Verdict::fails && witness && reported &&
       capra::check_orthant_monotonic(inf, 2, 500, seed).verdict == capra::Verdict::passes;
  detail += std::string("linf: ") + capra::to_string(r.verdict) + ", (1,0)/(1,1) " +
            (witness ? "refutes" : "does not refute") + " strict monotonicity";
  return {ok, detail};
}

// 8. the single block is optimal in the variational problem
Outcome variational_argmin(std::uint64_t seed) {
  testutil::Rng rng(seed);
  double worst_value = 0.0, worst_improve = -kInf;
  int runs = 0;
  for (double p : kPs)
    for (int phi_kind = 0; phi_kind < 2; ++phi_kind)
      for (int t = 0; t < 100; ++t) {
        const int d = rng.integer(2, 5);
        const PhiFunction phi = phi_kind ? PhiFunction::squares(d) : PhiFunction::identity(d);
        const Vector x = 2.0 * rng.sparse(d, rng.integer(1, d));
        const capra::VariationalValue v = capra::variational_phi_l0(lp_family(p, d), phi, x);
        worst_value = std::max(worst_value, std::abs(v.value - phi(capra::l0(x))));
        worst_value = std::max(worst_value, std::abs(v.upper - v.value));
        worst_improve = std::max(worst_improve, v.value - v.best_candidate);
        ++runs;
      }
  return {worst_value <= 1e-6 && worst_improve <= 1e-9,
          fmt("%g vectors, max |value - phi(l0)| %.2e, best improvement over the single block %.2e", runs,
              worst_value, worst_improve)};
}

// 9. grid and ADMM oracles against the library
Outcome oracle_consistency(std::uint64_t seed) {
  testutil::Rng rng(seed);
  double worst_below = -kInf, worst_above = -kInf;
  for (int d = 2; d <= 3; ++d)
    for (int t = 0; t < 50; ++t) {
      const double p = kPs[t % 3];
      const PhiFunction phi = t % 2 ? PhiFunction::squares(d) : PhiFunction::identity(d);
      const KNormFamily f = lp_family(p, d);
      const Vector x = rng.ball(f.source(), d);
      const capra::BracketedValue b = capra::eval_L0(f, phi, x);
      // Any box gives a lower bound; this one contains the library's dual point.
      const double R = std::max(1.0, 1.25 * b.dual_witness.lpNorm<Eigen::Infinity>());
      const double g = oracle::l0phi_grid_zoom(f, phi, x, oracle::Grid(d, R, 201), 2).value;
      worst_below = std::max(worst_below, b.lower - g);
      worst_above = std::max(worst_above, g - b.upper);
    }
  double worst_gauge = 0.0;
  int unconverged = 0;
  for (double p : kPs)
    for (int d = 2; d <= 5; ++d)
      for (int t = 0; t < 5; ++t) {
        const KNormFamily f = lp_family(p, d);
        const Vector x = rng.sparse_random_level(d);
        for (int k = 1; k <= d; ++k) {
          const oracle::GaugeResult g = oracle::gauge_atoms_oracle(f, x, k);
          if (!g.converged) ++unconverged;
          worst_gauge = std::max(worst_gauge, std::abs(g.value - capra::k_support_dual_norm(f, x, k)));
        }
      }
  return {worst_below <= 2e-3 && worst_above <= 1e-9 && worst_gauge <= 1e-5 && unconverged == 0,
          fmt("grid: max lower - grid %.2e, max grid - upper %.2e; ", worst_below, worst_above) +
              fmt("gauge: max error %.2e, %g unconverged", worst_gauge, unconverged)};
}

// 10. enumeration and the reformulated objective select the same optimum value
Outcome reformulation(std::uint64_t seed) {
  testutil::Rng rng(seed);
  int agree = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int d = rng.integer(2, 5);
    const double p = kPs[t % 3];
    const PhiFunction phi = t % 2 ? PhiFunction::squares(d) : PhiFunction::identity(d);
    std::vector<Vector> pts;
    const int m = rng.integer(3, 12);
    for (int i = 0; i < m; ++i) pts.push_back(rng.sparse_random_level(d));
    const capra::FeasibleSet C = t < 10 ? capra::FeasibleSet::finite(pts)
                                        : capra::FeasibleSet::affine_slice(rng.sparse(d, d), rng.sparse_random_level(d),
                                                                           -1.0, 1.0, 2 * rng.integer(5, 20));
    try {
      const capra::SparseSolution s = capra::solve_min_phi_l0(lp_family(p, d), phi, C);
      const double gap = std::max(std::abs(s.enumeration_value - s.reformulated_value), s.max_pointwise_gap);
      worst = std::max(worst, gap);
      if (gap <= 1e-6) ++agree;
    } catch (const std::exception&) {
    }
  }
  return {agree == 20, fmt("%g of 20 instances agree, max gap %.2e", agree, worst)};
}

struct Criterion {
  const char* name;
  double budget_s;
  Outcome (*run)(std::uint64_t);
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260101;
  const Criterion criteria[] = {
      {"table identities", 30, table_identities},
      {"capra-convexity of phi o l0", 300, capra_convexity},
      {"sphere coincidence", 300, sphere_coincidence},
      {"subdifferential nonempty", 300, subdiff_nonempty},
      {"subdifferential convex", 300, subdiff_convexity},
      {"strict chain", 30, strict_chain},
      {"monotonicity classification", 300, monotonicity},
      {"variational argmin", 300, variational_argmin},
      {"oracle consistency", 600, oracle_consistency},
      {"reformulation equivalence", 300, reformulation},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(seed + static_cast<std::uint64_t>(index));
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && secs < c.budget_s;
    if (!ok) ++failures;
    std::printf("%s %2d %-30s %7.2fs  %s\n", ok ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
