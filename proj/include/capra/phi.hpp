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

#ifndef CAPRA_PHI_HPP
#define CAPRA_PHI_HPP

#include <capra/types.hpp>

#include <string>
#include <vector>

namespace capra {

/// Nondecreasing finite map phi: {0, ..., d} -> R, composed with l0.
class PhiFunction {
 public:
  /// Throws ArgumentError unless values are finite and nondecreasing (at least two entries).
  explicit PhiFunction(std::vector<double> values);

  /// phi(l) = l.
  static PhiFunction identity(int d);
  /// phi(l) = l^2.
  static PhiFunction squares(int d);
  /// phi = 0, for which the conjugate reduces to the dual norm.
  static PhiFunction zero(int d);

  int dim() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double operator()(int l) const { return values_.at(static_cast<std::size_t>(l)); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// phi(0) = 0 and phi >= 0, required by the factorization machinery. Throws ArgumentError otherwise.
  void require_factorizable(const char* what) const;

 private:
  std::vector<double> values_;
};

}  // namespace capra

#endif  // CAPRA_PHI_HPP
