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

#ifndef CAPRA_IO_HPP
#define CAPRA_IO_HPP

#include <capra/normcore.hpp>
#include <capra/phi.hpp>
#include <capra/sparseopt.hpp>

#include <string>

namespace capra {

/// "lp:<p>" (p a decimal, a fraction such as 3/2, or "inf"), "l1", "l2", "linf", or "custom:skew".
SourceNorm parse_source(const std::string& spec);

/// "id", "sq", "zero" or "table:v0,v1,...,vd".
PhiFunction parse_phi(const std::string& spec, int d);

/// Comma-separated decimals, e.g. "3,4,0".
Vector parse_vector(const std::string& text);

/// The skewed norm |x1 - x2| + |x2| + ... + |xd|, which is not orthant-monotonic.
SourceNorm skew_norm();

/// A sparse optimization instance: { "source": ..., "phi": [...] or spec, "set": {...} }.
struct Instance {
  SourceNorm source;
  PhiFunction phi;
  FeasibleSet set;
};

/// "set" is {"kind": "finite", "points": [[...], ...]} or
/// {"kind": "affine", "x0": [...], "v": [...], "t": [a, b], "n": n}.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);

}  // namespace capra

#endif  // CAPRA_IO_HPP
