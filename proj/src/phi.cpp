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

#include <capra/phi.hpp>

#include <cmath>

namespace capra {

PhiFunction::PhiFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw ArgumentError("phi needs values for l = 0, ..., d with d >= 1");
  for (std::size_t l = 0; l < values_.size(); ++l) {
    if (!std::isfinite(values_[l])) throw ArgumentError("phi must be finite; infinite values are unsupported");
    if (l > 0 && values_[l] < values_[l - 1]) throw ArgumentError("phi must be nondecreasing");
  }
}

PhiFunction PhiFunction::identity(int d) {
  std::vector<double> v(static_cast<std::size_t>(d + 1));
  for (int l = 0; l <= d; ++l) v[static_cast<std::size_t>(l)] = l;
  return PhiFunction(std::move(v));
}

PhiFunction PhiFunction::squares(int d) {
  std::vector<double> v(static_cast<std::size_t>(d + 1));
  for (int l = 0; l <= d; ++l) v[static_cast<std::size_t>(l)] = static_cast<double>(l) * l;
  return PhiFunction(std::move(v));
}

PhiFunction PhiFunction::zero(int d) { return PhiFunction(std::vector<double>(static_cast<std::size_t>(d + 1), 0.0)); }

void PhiFunction::require_factorizable(const char* what) const {
  if (values_.front() != 0.0) throw ArgumentError(std::string(what) + ": phi(0) must be 0");
  // Nondecreasing with phi(0) = 0 already gives phi >= 0.
}

}  // namespace capra
