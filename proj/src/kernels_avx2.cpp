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

// Built with -mavx2 -mfma -ffp-contract=off; only reached after a CPU check.

#include <immintrin.h>

#include <cmath>

#include "csdsynth/kernels.hpp"

namespace csdsynth::kernels::avx2 {

namespace {

// (v0, v1) packed as [re0, im0, re1, im1] times the complex scalar m.
inline __m256d cmul(__m256d v, __m256d mre, __m256d mim) {
  __m256d swapped = _mm256_permute_pd(v, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(v, mre),
                          _mm256_mul_pd(swapped, mim));
}

inline __m256d bcast_re(cd z) { return _mm256_set1_pd(z.real()); }
inline __m256d bcast_im(cd z) { return _mm256_set1_pd(z.imag()); }

// Reduces per-lane (value, index) pairs: larger value wins, then the
// smaller index, which reproduces the scalar first-maximum rule.
ArgMax reduce(__m256d best_v, __m256i best_i) {
  alignas(32) double v[4];
  alignas(32) std::int64_t idx[4];
  _mm256_store_pd(v, best_v);
  _mm256_store_si256(reinterpret_cast<__m256i *>(idx), best_i);
  ArgMax out{0, -INFINITY};
  bool have = false;
  for (int l = 0; l < 4; ++l) {
    if (idx[l] < 0) continue;
    std::size_t i = static_cast<std::size_t>(idx[l]);
    if (!have || v[l] > out.value || (v[l] == out.value && i < out.index)) {
      out = {i, v[l]};
      have = true;
    }
  }
  return out;
}

}  // namespace

void apply_1q(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
              const cd m[4]) {
  if (tbit == 0 || (cmask & 1u) != 0 || nbits < 2) {
    scalar::apply_1q(amp, nbits, tbit, cmask, m);
    return;
  }
  const std::uint64_t n = std::uint64_t{1} << nbits;
  const std::uint64_t stride = std::uint64_t{1} << tbit;
  const __m256d m0r = bcast_re(m[0]), m0i = bcast_im(m[0]);
  const __m256d m1r = bcast_re(m[1]), m1i = bcast_im(m[1]);
  const __m256d m2r = bcast_re(m[2]), m2i = bcast_im(m[2]);
  const __m256d m3r = bcast_re(m[3]), m3i = bcast_im(m[3]);
  double *base = reinterpret_cast<double *>(amp);
  for (std::uint64_t hi = 0; hi < n; hi += 2 * stride) {
    for (std::uint64_t lo = 0; lo < stride; lo += 2) {
      std::uint64_t i0 = hi | lo;
      if ((i0 & cmask) != cmask) continue;
      double *p0 = base + 2 * i0;
      double *p1 = base + 2 * (i0 | stride);
      __m256d a0 = _mm256_loadu_pd(p0);
      __m256d a1 = _mm256_loadu_pd(p1);
      __m256d r0 = _mm256_add_pd(cmul(a0, m0r, m0i), cmul(a1, m1r, m1i));
      __m256d r1 = _mm256_add_pd(cmul(a0, m2r, m2i), cmul(a1, m3r, m3i));
      _mm256_storeu_pd(p0, r0);
      _mm256_storeu_pd(p1, r1);
    }
  }
}

void apply_diag(cd *amp, unsigned nbits, unsigned tbit, std::uint64_t cmask,
                cd d0, cd d1) {
  if (tbit == 0 || (cmask & 1u) != 0 || nbits < 2) {
    scalar::apply_diag(amp, nbits, tbit, cmask, d0, d1);
    return;
  }
  const std::uint64_t n = std::uint64_t{1} << nbits;
  const std::uint64_t stride = std::uint64_t{1} << tbit;
  const __m256d d0r = bcast_re(d0), d0i = bcast_im(d0);
  const __m256d d1r = bcast_re(d1), d1i = bcast_im(d1);
  double *base = reinterpret_cast<double *>(amp);
  for (std::uint64_t hi = 0; hi < n; hi += 2 * stride) {
    for (std::uint64_t lo = 0; lo < stride; lo += 2) {
      std::uint64_t i0 = hi | lo;
      if ((i0 & cmask) != cmask) continue;
      double *p0 = base + 2 * i0;
      double *p1 = base + 2 * (i0 | stride);
      _mm256_storeu_pd(p0, cmul(_mm256_loadu_pd(p0), d0r, d0i));
      _mm256_storeu_pd(p1, cmul(_mm256_loadu_pd(p1), d1r, d1i));
    }
  }
}

ArgMax max_dot4(const double *a, const double *b, const double *c,
                const double *d, std::size_t n, const double q[4],
                bool absolute) {
  const __m256d q0 = _mm256_set1_pd(q[0]);
  const __m256d q1 = _mm256_set1_pd(q[1]);
  const __m256d q2 = _mm256_set1_pd(q[2]);
  const __m256d q3 = _mm256_set1_pd(q[3]);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best_v = _mm256_set1_pd(-INFINITY);
  __m256i best_i = _mm256_set1_epi64x(-1);
  __m256i cur_i = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_mul_pd(_mm256_loadu_pd(a + i), q0);
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(b + i), q1));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(c + i), q2));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(d + i), q3));
    if (absolute) s = _mm256_andnot_pd(sign, s);
    __m256d gt = _mm256_cmp_pd(s, best_v, _CMP_GT_OQ);
    best_v = _mm256_blendv_pd(best_v, s, gt);
    best_i = _mm256_castpd_si256(_mm256_blendv_pd(
        _mm256_castsi256_pd(best_i), _mm256_castsi256_pd(cur_i), gt));
    cur_i = _mm256_add_epi64(cur_i, step);
  }
  ArgMax out = reduce(best_v, best_i);
  if (i < n) {
    ArgMax tail = scalar::max_dot4(a + i, b + i, c + i, d + i, n - i, q,
                                   absolute);
    if (tail.value > out.value) out = {tail.index + i, tail.value};
  }
  return out;
}

ArgMax max_dot2(const double *re, const double *im, std::size_t n, double cr,
                double ci) {
  const __m256d vr = _mm256_set1_pd(cr);
  const __m256d vi = _mm256_set1_pd(ci);
  __m256d best_v = _mm256_set1_pd(-INFINITY);
  __m256i best_i = _mm256_set1_epi64x(-1);
  __m256i cur_i = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_mul_pd(_mm256_loadu_pd(re + i), vr);
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(im + i), vi));
    __m256d gt = _mm256_cmp_pd(s, best_v, _CMP_GT_OQ);
    best_v = _mm256_blendv_pd(best_v, s, gt);
    best_i = _mm256_castpd_si256(_mm256_blendv_pd(
        _mm256_castsi256_pd(best_i), _mm256_castsi256_pd(cur_i), gt));
    cur_i = _mm256_add_epi64(cur_i, step);
  }
  ArgMax out = reduce(best_v, best_i);
  if (i < n) {
    ArgMax tail = scalar::max_dot2(re + i, im + i, n - i, cr, ci);
    if (tail.value > out.value) out = {tail.index + i, tail.value};
  }
  return out;
}

}  // namespace csdsynth::kernels::avx2
