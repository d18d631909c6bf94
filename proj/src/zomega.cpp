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

#include "csdsynth/zomega.hpp"

#include <cmath>

#include "csdsynth/errors.hpp"

namespace csdsynth {

ZOmega ZOmega::operator+(const ZOmega &o) const {
  return ZOmega{{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]}};
}

ZOmega ZOmega::operator-(const ZOmega &o) const {
  return ZOmega{{a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2], a[3] - o.a[3]}};
}

ZOmega ZOmega::operator*(const ZOmega &o) const {
  // w^4 = -1
  std::int64_t c[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) c[i + k] += a[i] * o.a[k];
  }
  return ZOmega{{c[0] - c[4], c[1] - c[5], c[2] - c[6], c[3]}};
}

ZOmega ZOmega::times_omega(int j) const {
  j = ((j % 8) + 8) % 8;
  ZOmega r = *this;
  for (int s = 0; s < j; ++s) {
    r = ZOmega{{-r.a[3], r.a[0], r.a[1], r.a[2]}};
  }
  return r;
}

ZOmega ZOmega::conj() const { return ZOmega{{a[0], -a[3], -a[2], -a[1]}}; }

ZOmega ZOmega::div_sqrt2() const {
  // x / sqrt2 = x (w - w^3) / 2
  return ZOmega{{(a[1] - a[3]) / 2, (a[0] + a[2]) / 2, (a[1] + a[3]) / 2,
                 (a[2] - a[0]) / 2}};
}

std::complex<double> ZOmega::to_complex() const {
  const double r = M_SQRT1_2;
  double re = static_cast<double>(a[0]) +
              static_cast<double>(a[1] - a[3]) * r;
  double im = static_cast<double>(a[2]) +
              static_cast<double>(a[1] + a[3]) * r;
  return {re, im};
}

ExactU2 ExactU2::hadamard() { return identity().times_h(); }

ExactU2 ExactU2::times_t() const {
  ExactU2 r = *this;
  r.j = static_cast<std::uint8_t>((j + 1) & 7);
  return r;
}

ExactU2 ExactU2::times_h() const {
  ExactU2 r;
  ZOmega wv = v.conj().times_omega(j);
  ZOmega wu = u.conj().times_omega(j);
  r.u = u - wv;
  r.v = v + wu;
  r.j = static_cast<std::uint8_t>((j + 4) & 7);
  r.k = k + 1;
  r.reduce();
  return r;
}

void ExactU2::reduce() {
  while (k > 0 && u.divisible_by_sqrt2() && v.divisible_by_sqrt2()) {
    u = u.div_sqrt2();
    v = v.div_sqrt2();
    --k;
  }
}

ExactU2 ExactU2::times_phase(int p) const {
  ExactU2 r = *this;
  r.u = u.times_omega(p);
  r.v = v.times_omega(p);
  r.j = static_cast<std::uint8_t>(((j + 2 * p) % 8 + 8) % 8);
  return r;
}

std::array<std::complex<double>, 4> ExactU2::to_complex() const {
  const double s = std::pow(2.0, -0.5 * k);
  std::complex<double> cu = u.to_complex() * s;
  std::complex<double> cv = v.to_complex() * s;
  std::complex<double> ph = std::polar(1.0, M_PI / 4 * j);
  return {cu, -ph * std::conj(cv), cv, ph * std::conj(cu)};
}

namespace {

constexpr int kCoefBits = 20;
constexpr std::int64_t kCoefLimit = std::int64_t{1} << (kCoefBits - 1);

struct Packer {
  std::uint64_t w[3] = {0, 0, 0};
  unsigned pos = 0;
  void put(std::uint64_t v, unsigned bits) {
    unsigned off = pos % 64;
    w[pos / 64] |= v << off;
    if (off + bits > 64) w[pos / 64 + 1] |= v >> (64 - off);
    pos += bits;
  }
};

bool lex_less(const ExactU2 &x, const ExactU2 &y) {
  if (x.u.a != y.u.a) return x.u.a < y.u.a;
  if (x.v.a != y.v.a) return x.v.a < y.v.a;
  return x.j < y.j;
}

}  // namespace

ExactKey canonical_key(const ExactU2 &m) {
  ExactU2 best = m;
  for (int p = 1; p < 8; ++p) {
    ExactU2 c = m.times_phase(p);
    if (lex_less(c, best)) best = c;
  }
  Packer pk;
  for (const ZOmega *z : {&best.u, &best.v}) {
    for (std::int64_t c : z->a) {
      if (c >= kCoefLimit || c < -kCoefLimit) {
        throw ResourceLimit("exact coefficient exceeds key range");
      }
      pk.put(static_cast<std::uint64_t>(c + kCoefLimit), kCoefBits);
    }
  }
  if (best.k > 63) throw ResourceLimit("denominator exponent exceeds key range");
  pk.put(best.j, 3);
  pk.put(static_cast<std::uint64_t>(best.k), 6);
  return ExactKey{{pk.w[0], pk.w[1], pk.w[2]}};
}

}  // namespace csdsynth
