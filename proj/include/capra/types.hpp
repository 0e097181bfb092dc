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

#ifndef CAPRA_TYPES_HPP
#define CAPRA_TYPES_HPP

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace capra {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense real vector, the primal and dual ambient object.
using Vector = VectorX<double>;

/// Absolute threshold below which an entry counts as zero for support detection.
/// l0 is discontinuous, so callers own the scaling of their data.
inline constexpr double kZeroTol = 1e-12;

// Errors. Every failure mode of the library is one of these.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidNormError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Raised when a bracketing solver exhausts its budget; carries the certified bounds.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Sorted, duplicate-free subset of {0, ..., d-1}. Indices are zero-based in code.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> indices) : IndexSet(std::vector<int>(indices)) {}
  explicit IndexSet(std::vector<int> indices);

  static IndexSet full(int d);
  static IndexSet support(const Vector& x);

  int size() const noexcept { return static_cast<int>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int i) const;
  int operator[](std::size_t pos) const { return indices_[pos]; }
  const std::vector<int>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// Throws ArgumentError when an index is outside [0, d).
  void check_range(int d) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> indices_;
};

/// Calls fn(K) for every K with |K| == k, in lexicographic order.
template <typename Fn>
void for_each_subset(int d, int k, Fn&& fn) {
  if (k < 0 || k > d) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(IndexSet(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Binomial coefficient, saturating at a large value.
long long binomial(int n, int k);

/// Throws ArgumentError on NaN/Inf entries or an empty vector.
void require_finite(const Vector& x, const char* what);

/// Throws ArgumentError when sizes differ.
void require_same_size(const Vector& a, const Vector& b, const char* what);

}  // namespace capra

#endif  // CAPRA_TYPES_HPP
