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

#include <cstdlib>
#include <cstring>

#include "csdsynth/kernels.hpp"

namespace csdsynth::kernels {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CSDSYNTH_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const char *isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char *env = std::getenv("CSDSYNTH_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
      return Isa::Scalar;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

#if defined(CSDSYNTH_HAVE_AVX2)
#define CSDSYNTH_DISPATCH(isa, fn, ...) \
  ((isa) == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define CSDSYNTH_DISPATCH(isa, fn, ...) scalar::fn(__VA_ARGS__)
#endif

void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4], Isa isa) {
  CSDSYNTH_DISPATCH(isa, apply_1q, amp, nbits, tbit, cmask, m);
}

void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]) {
  apply_1q(amp, nbits, tbit, cmask, m, active_isa());
}

void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1, Isa isa) {
  CSDSYNTH_DISPATCH(isa, apply_diag, amp, nbits, tbit, cmask, d0, d1);
}

void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1) {
  apply_diag(amp, nbits, tbit, cmask, d0, d1, active_isa());
}

ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute, Isa isa) {
  return CSDSYNTH_DISPATCH(isa, max_dot4, a, b, c, d, n, q, absolute);
}

ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute) {
  return max_dot4(a, b, c, d, n, q, absolute, active_isa());
}

ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci, Isa isa) {
  return CSDSYNTH_DISPATCH(isa, max_dot2, re, im, n, cr, ci);
}

ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci) {
  return max_dot2(re, im, n, cr, ci, active_isa());
}

#undef CSDSYNTH_DISPATCH

}  // namespace csdsynth::kernels
