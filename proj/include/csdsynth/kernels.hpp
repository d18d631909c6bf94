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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace csdsynth::kernels {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/** ISA used by the dispatching entry points. Chosen once: AVX2 when both
 * compiled in and supported by the CPU, unless CSDSYNTH_SIMD=scalar. */
Isa active_isa();
bool isa_available(Isa isa);
const char *isa_name(Isa isa);

/**
 * Applies the 2x2 matrix m (row-major) to bit `tbit` (0 = least
 * significant) of every basis index whose bits in `cmask` are all set.
 */
void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4], Isa isa);
void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]);

/** Diagonal special case: amp[i] *= (bit tbit of i) ? d1 : d0. */
void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1, Isa isa);
void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1);

struct ArgMax {
  std::size_t index;
  double value;
};

/**
 * Maximum over i of a[i]*q[0] + b[i]*q[1] + c[i]*q[2] + d[i]*q[3] (or of
 * its absolute value). The first maximal index wins. Every ISA returns
 * bit-identical results.
 */
ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute, Isa isa);
ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute);

/** Maximum over i of re[i]*cr + im[i]*ci; same tie rule as max_dot4. */
ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci, Isa isa);
ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci);

namespace scalar {
void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]);
void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1);
ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute);
ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci);
}  // namespace scalar

namespace avx2 {
void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]);
void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1);
ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute);
ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci);
}  // namespace avx2

}  // namespace csdsynth::kernels
