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

#include <capra/capra.hpp>

#include <capra/factorization.hpp>
#include <capra/monotonicity.hpp>

#include <algorithm>
#include <cmath>

namespace capra {

namespace {

void require_om(const KNormFamily& f, const char* what) {
  if (!f.orthant_monotonic()) {
    throw UnsupportedError(std::string(what) + ": the source norm must be orthant-monotonic");
  }
}

void require_phi_dim(const KNormFamily& f, const PhiFunction& phi, const char* what) {
  if (phi.dim() != f.dim()) throw ArgumentError(std::string(what) + ": phi has the wrong dimension");
}

std::vector<double> conjugate_terms(const std::vector<double>& chain, const PhiFunction& phi) {
  std::vector<double> terms(chain.size());
  for (std::size_t l = 0; l < chain.size(); ++l) terms[l] = chain[l] - phi(static_cast<int>(l));
  return terms;
}

}  // namespace

double coupling(const SourceNorm& n, const Vector& x, const Vector& y) {
  require_same_size(x, y, "coupling");
  require_finite(x, "coupling");
  require_finite(y, "coupling");
  if (x.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  return x.dot(y) / norm(n, x);
}

ConjugateValue capra_conjugate(const KNormFamily& f, const PhiFunction& phi, const Vector& y) {
  require_om(f, "capra_conjugate");
  require_phi_dim(f, phi, "capra_conjugate");
  ConjugateValue out;
  out.terms = conjugate_terms(top_k_chain(f, y), phi);
  out.value = *std::max_element(out.terms.begin(), out.terms.end());
  const double tie = 1e-12 * (1.0 + std::abs(out.value));
  for (std::size_t l = 0; l < out.terms.size(); ++l) {
    if (out.terms[l] >= out.value - tie) out.argmax.push_back(static_cast<int>(l));
  }
  return out;
}

BracketedValue capra_biconjugate(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                 const FactorizationOptions& opts) {
  require_om(f, "capra_biconjugate");
  require_phi_dim(f, phi, "capra_biconjugate");
  f.check(x, "capra_biconjugate");
  // Constants pass through conjugation, so work with phi - phi(0).
  const double base = phi(0);
  std::vector<double> shifted = phi.values();
  for (double& v : shifted) v -= base;
  BracketedValue b = eval_L0(f, PhiFunction(std::move(shifted)), normalize(f.source(), x), opts);
  b.lower += base;
  b.upper += base;
  for (auto& c : b.candidates) c.second += base;
  return b;
}

bool subdiff_at_zero_membership(const KNormFamily& f, const PhiFunction& phi, const Vector& y, double tol) {
  require_phi_dim(f, phi, "subdiff_at_zero_membership");
  const std::vector<double> chain = top_k_chain(f, y);
  for (int l = 1; l <= f.dim(); ++l) {
    if (chain[static_cast<std::size_t>(l)] > phi(l) - phi(0) + tol) return false;
  }
  return true;
}

MembershipDiagnostics subdiff_membership(const KNormFamily& f, const PhiFunction& phi, const Vector& x,
                                         const Vector& y, double tol) {
  require_om(f, "subdiff_membership");
  require_phi_dim(f, phi, "subdiff_membership");
  f.check(x, "subdiff_membership");
  f.check(y, "subdiff_membership");
  MembershipDiagnostics out;
  out.level = l0(x);
  if (out.level == 0) {
    out.member = subdiff_at_zero_membership(f, phi, y, tol);
    if (!out.member) out.failed = "at-zero";
    return out;
  }

  const std::vector<double> chain = top_k_chain(f, y);
  const auto l = static_cast<std::size_t>(out.level);
  // An l-sparse x has sn_l(x) = |||x|||.
  const double nx = norm(f.source(), x);
  const double rhs = nx * chain[l];
  out.normal_cone_residual = std::abs(x.dot(y) - rhs);

  const std::vector<double> terms = conjugate_terms(chain, phi);
  const double best = *std::max_element(terms.begin(), terms.end());
  out.argmax_residual = best - terms[l];
  const double tie = 1e-12 * (1.0 + std::abs(best));
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j] >= best - tie) out.argmax.push_back(static_cast<int>(j));
  }

  if (out.normal_cone_residual > tol * (1.0 + rhs)) {
    out.failed = "normal-cone";
  } else if (out.argmax_residual > tol * (1.0 + std::abs(best))) {
    out.failed = "argmax";
  }
  out.member = out.failed.empty();
  return out;
}

SubgradientCertificate subgradient_construct(const KNormFamily& f, const PhiFunction& phi, const Vector& x) {
  require_phi_dim(f, phi, "subgradient_construct");
  f.check(x, "subgradient_construct");
  if (!f.osm_pair()) {
    throw UnsupportedError("subgradient_construct: the source and its dual must be orthant-strictly monotonic");
  }
  SubgradientCertificate cert;
  const int l = l0(x);
  if (l == 0) {
    cert.y = Vector::Zero(f.dim());
    cert.y0 = cert.y;
    cert.conditions = subdiff_membership(f, phi, x, cert.y, 1e-8);
    return cert;
  }

  Vector y0 = support_preserving_dual_pair(f.source(), x);
  y0 /= dual_norm(f.source(), y0);
  const std::vector<double> chain = top_k_chain(f, y0);
  const auto L = static_cast<std::size_t>(l);

  // psi(lambda) = max_j [lambda top_j(y0) - phi(j)] - [lambda top_l(y0) - phi(l)]; feasible when zero.
  auto feasible = [&](double lambda) {
    const double at_l = lambda * chain[L] - phi(l);
    const double slack = 1e-13 * (1.0 + std::abs(at_l) + lambda * chain[L]);
    for (std::size_t j = 0; j < chain.size(); ++j) {
      if (lambda * chain[j] - phi(static_cast<int>(j)) > at_l + slack) return false;
    }
    return true;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kLambdaCap) throw ConstructionError("subgradient_construct: lambda exceeded the cap");
  }
  while (hi - lo > 1e-6 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  // The minimal lambda is a breakpoint of the piecewise linear psi; take it when the bracket holds it.
  double exact = 0.0;
  for (std::size_t j = 0; j < L; ++j) {
    const double rise = chain[L] - chain[j];
    if (rise > 0.0) exact = std::max(exact, (phi(l) - phi(static_cast<int>(j))) / rise);
  }
  cert.lambda = (exact >= lo && exact <= hi && feasible(exact)) ? exact : hi;
  cert.y0 = y0;
  cert.y = cert.lambda * y0;
  cert.conditions = subdiff_membership(f, phi, x, cert.y, 1e-8);
  if (!cert.conditions.member) {
    throw ConstructionError("subgradient_construct: certificate failed membership (" + cert.conditions.failed + ")");
  }
  return cert;
}

bool subdiff_convexity_probe(const KNormFamily& f, const PhiFunction& phi, const Vector& x, const Vector& y1,
                             const Vector& y2, double t, double tol) {
  if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("subdiff_convexity_probe: t must lie in [0, 1]");
  return subdiff_membership(f, phi, x, t * y1 + (1.0 - t) * y2, tol).member;
}

}  // namespace capra
