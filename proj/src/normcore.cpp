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

#include <capra/normcore.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace capra {

IndexSet::IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ArgumentError("IndexSet: duplicate index");
  }
  if (!indices_.empty() && indices_.front() < 0) throw ArgumentError("IndexSet: negative index");
}

IndexSet IndexSet::full(int d) {
  std::vector<int> idx(static_cast<std::size_t>(std::max(d, 0)));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  return IndexSet(std::move(idx));
}

IndexSet IndexSet::support(const Vector& x) {
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > kZeroTol) idx.push_back(static_cast<int>(i));
  }
  return IndexSet(std::move(idx));
}

bool IndexSet::contains(int i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

void IndexSet::check_range(int d) const {
  if (!indices_.empty() && indices_.back() >= d) throw ArgumentError("IndexSet: index out of range");
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1LL << 50)) return 1LL << 50;
  }
  return r;
}

void require_finite(const Vector& x, const char* what) {
  if (x.size() == 0) throw ArgumentError(std::string(what) + ": empty vector");
  if (!x.allFinite()) throw ArgumentError(std::string(what) + ": non-finite entry");
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) throw ArgumentError(std::string(what) + ": dimension mismatch");
}

LpExponent LpExponent::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("lp exponent must be a finite value >= 1");
  LpExponent e;
  e.infinite_ = false;
  e.p_ = p;
  return e;
}

LpExponent LpExponent::conjugate() const {
  if (infinite_) return finite(1.0);
  if (p_ == 1.0) return infinity();
  return finite(p_ / (p_ - 1.0));
}

std::string LpExponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

SourceNorm SourceNorm::lp(double p) {
  if (std::isinf(p) && p > 0) return lp(LpExponent::infinity());
  return lp(LpExponent::finite(p));
}

SourceNorm SourceNorm::lp(LpExponent p) {
  SourceNorm n;
  n.kind_ = Kind::lp;
  n.p_ = p;
  return n;
}

SourceNorm SourceNorm::custom(CustomNorm spec) {
  if (!spec.eval) throw ArgumentError("custom norm requires an evaluation procedure");
  if (spec.oracle_dim_cap < 1) throw ArgumentError("custom norm oracle_dim_cap must be positive");
  SourceNorm n;
  n.kind_ = Kind::custom;
  n.custom_ = std::make_shared<const CustomNorm>(std::move(spec));
  return n;
}

bool SourceNorm::orthant_monotonic() const noexcept {
  return is_lp() ? true : custom_->orthant_monotonic;
}

bool SourceNorm::orthant_strictly_monotonic() const noexcept {
  return is_lp() ? !p_.is_infinite() : custom_->orthant_strictly_monotonic;
}

bool SourceNorm::dual_orthant_strictly_monotonic() const noexcept {
  // The dual of lp is lq, which is OSM iff q is finite iff p > 1.
  return is_lp() ? (p_.is_infinite() || p_.value() > 1.0) : custom_->dual_orthant_strictly_monotonic;
}

bool SourceNorm::has_analytic_dual() const noexcept { return is_lp() || static_cast<bool>(custom_->dual); }

int SourceNorm::oracle_dim_cap() const noexcept {
  return is_lp() ? std::numeric_limits<int>::max() : custom_->oracle_dim_cap;
}

std::string SourceNorm::name() const {
  if (!is_lp()) return "custom:" + custom_->name;
  if (p_.is_infinite()) return "linf";
  if (p_.value() == 1.0) return "l1";
  return "lp:" + p_.to_string();
}

int l0(const Vector& x) {
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) count += std::abs(x[i]) > kZeroTol ? 1 : 0;
  return count;
}

namespace {

double checked_custom(const std::function<double(const Vector&)>& fn, const Vector& x, const char* what) {
  const double v = fn(x);
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidNormError(std::string(what) + " returned a negative or non-finite value");
  }
  return v;
}

}  // namespace

double norm(const SourceNorm& n, const Vector& x) {
  require_finite(x, "norm");
  if (n.is_lp()) return lp_norm(x, n.exponent());
  return checked_custom(n.custom_spec()->eval, x, "custom norm");
}

double dual_norm(const SourceNorm& n, const Vector& y) {
  require_finite(y, "dual_norm");
  if (n.is_lp()) return lp_norm(y, n.dual_exponent());
  const CustomNorm& c = *n.custom_spec();
  if (c.dual) return checked_custom(c.dual, y, "custom dual norm");
  if (y.size() > c.oracle_dim_cap) {
    throw UnsupportedError("dual_norm: custom norm without a dual procedure above its oracle dimension cap");
  }
  return detail::numeric_ball_maximum(c.eval, y, IndexSet::full(static_cast<int>(y.size()))).value;
}

Vector restrict(const Vector& x, const IndexSet& K) {
  K.check_range(static_cast<int>(x.size()));
  Vector r = Vector::Zero(x.size());
  for (int i : K) r[i] = x[i];
  return r;
}

Vector normalize(const SourceNorm& n, const Vector& x) {
  const double nx = norm(n, x);
  if (nx == 0.0) return Vector::Zero(x.size());
  return x / nx;
}

bool is_dual_pair(const SourceNorm& n, const Vector& x, const Vector& y, double tol) {
  require_same_size(x, y, "is_dual_pair");
  const double bound = norm(n, x) * dual_norm(n, y);
  return std::abs(x.dot(y) - bound) <= tol * (1.0 + bound);
}

BallMaximum restricted_ball_maximum(const SourceNorm& n, const Vector& y, const IndexSet& K) {
  require_finite(y, "restricted_ball_maximum");
  K.check_range(static_cast<int>(y.size()));
  const Vector yk = restrict(y, K);
  if (n.is_lp()) {
    // The lp norm restricted to R_K is lp on K, so the restricted dual is lq of y_K.
    BallMaximum out;
    out.value = lp_norm(yk, n.dual_exponent());
    out.argmax = lp_duality_map(yk, n.dual_exponent());
    const double s = lp_norm(out.argmax, n.exponent());
    if (s > 0.0) out.argmax /= s;
    return out;
  }
  const CustomNorm& c = *n.custom_spec();
  if (K.size() > c.oracle_dim_cap) {
    throw UnsupportedError("restricted_ball_maximum: support above the custom norm oracle dimension cap");
  }
  return detail::numeric_ball_maximum(c.eval, y, K);
}

}  // namespace capra
