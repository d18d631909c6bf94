// Copyright 2026 The csdsynth Authors
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

#include <cmath>

#include "csdsynth/kernels.hpp"

namespace csdsynth::kernels::scalar {

void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]) {
  const std::uint64_t n = std::uint64_t{1} << nbits;
  const std::uint64_t stride = std::uint64_t{1} << tbit;
  for (std::uint64_t hi = 0; hi < n; hi += 2 * stride) {
    for (std::uint64_t lo = 0; lo < stride; ++lo) {
      std::uint64_t i0 = hi | lo;
      if ((i0 & cmask) != cmask) continue;
      std::uint64_t i1 = i0 | stride;
      cd a0 = amp[i0];
      cd a1 = amp[i1];
      amp[i0] = m[0] * a0 + m[1] * a1;
      amp[i1] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1) {
  const std::uint64_t n = std::uint64_t{1} << nbits;
  const std::uint64_t stride = std::uint64_t{1} << tbit;
  for (std::uint64_t hi = 0; hi < n; hi += 2 * stride) {
    for (std::uint64_t lo = 0; lo < stride; ++lo) {
      std::uint64_t i0 = hi | lo;
      if ((i0 & cmask) != cmask) continue;
      amp[i0] *= d0;
      amp[i0 | stride] *= d1;
    }
  }
}

ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute) {
  ArgMax best{0, -INFINITY};
  for (std::size_t i = 0; i < n; ++i) {
    double s = a[i] * q[0];
    s = s + b[i] * q[1];
    s = s + c[i] * q[2];
    s = s + d[i] * q[3];
    if (absolute) s = std::fabs(s);
    if (s > best.value) best = {i, s};
  }
  return best;
}

ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci) {
  ArgMax best{0, -INFINITY};
  for (std::size_t i = 0; i < n; ++i) {
    double s = re[i] * cr;
    s = s + im[i] * ci;
    if (s > best.value) best = {i, s};
  }
  return best;
}

}  // namespace csdsynth::kernels::scalar
