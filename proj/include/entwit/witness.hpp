// Copyright 2026 The entwit Authors
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

#pragma once

#include <limits>

#include "entwit/linalg.hpp"

namespace entwit {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Hermitian operator together with the class of states it is meant to
/// witness (diameter k) and the spectral box -lower*I <= op <= upper*I it was
/// optimised over. Either bound may be kUnbounded.
struct Witness {
  Matrix op;
  Dims dims;
  int k = 1;
  double lower = kUnbounded;
  double upper = kUnbounded;

  int dim() const { return static_cast<int>(op.rows()); }

  /// Spectral check of the box constraint.
  bool in_box(double tol = 1e-8) const {
    auto eig = hermitian_eig(op);
    bool ok = true;
    if (lower != kUnbounded) ok = ok && eig.values[0] >= -lower - tol;
    if (upper != kUnbounded) ok = ok && eig.values[eig.values.size() - 1] <= upper + tol;
    return ok;
  }
};

}  // namespace entwit
