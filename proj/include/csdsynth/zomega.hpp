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

#include <array>
#include <complex>
#include <cstdint>

namespace csdsynth {

/**
 * Element a0 + a1 w + a2 w^2 + a3 w^3 of Z[w], w = exp(i pi/4).
 */
struct ZOmega {
  std::array<std::int64_t, 4> a{0, 0, 0, 0};

  static ZOmega from_int(std::int64_t v) { return ZOmega{{v, 0, 0, 0}}; }

  ZOmega operator+(const ZOmega &o) const;
  ZOmega operator-(const ZOmega &o) const;
  ZOmega operator*(const ZOmega &o) const;
  bool operator==(const ZOmega &o) const { return a == o.a; }

  /** Multiplication by w^j for any integer j. */
  ZOmega times_omega(int j) const;
  ZOmega conj() const;

  bool divisible_by_sqrt2() const {
    return ((a[0] - a[2]) & 1) == 0 && ((a[1] - a[3]) & 1) == 0;
  }
  /** Exact division; requires divisible_by_sqrt2(). */
  ZOmega div_sqrt2() const;

  std::complex<double> to_complex() const;
};

/**
 * Exact single-qubit Clifford+T unitary
 *
 *     2^{-k/2} [[u, -w^j conj(v)], [v, w^j conj(u)]]
 *
 * with det = w^j. Kept reduced: k is minimal.
 */
struct ExactU2 {
  ZOmega u = ZOmega::from_int(1);
  ZOmega v;
  std::uint8_t j = 0;
  std::int32_t k = 0;

  static ExactU2 identity() { return ExactU2{}; }
  static ExactU2 hadamard();

  ExactU2 times_t() const;
  ExactU2 times_h() const;

  /** Numeric matrix entries, row-major. */
  std::array<std::complex<double>, 4> to_complex() const;
  /** Global phase w^p applied to the whole matrix. */
  ExactU2 times_phase(int p) const;

 private:
  void reduce();
};

/** Canonical key of an ExactU2 modulo the global phases w^p. */
struct ExactKey {
  std::uint64_t w[3];
  bool operator==(const ExactKey &o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2];
  }
};

/** Throws ResourceLimit if a coefficient exceeds the packed range. */
ExactKey canonical_key(const ExactU2 &m);

}  // namespace csdsynth
