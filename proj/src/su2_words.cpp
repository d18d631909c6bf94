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

#include "csdsynth/su2_words.hpp"

#include <algorithm>
#include <cmath>

#include "csdsynth/kernels.hpp"
#include "word_table_internal.hpp"

namespace csdsynth {

PhasedSu2 split_phase(const Matrix &v) {
  if (v.rows() != 2 || v.cols() != 2) {
    throw DimensionMismatch("split_phase expects a 2x2 matrix");
  }
  double r = unitarity_residual(v);
  if (r > 1e-9) throw NotUnitary("split_phase input is not unitary", r);
  cd det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
  double theta = std::arg(det) / 2;
  if (theta < 0) theta += M_PI;
  if (theta >= M_PI) theta -= M_PI;
  return {theta, v * std::polar(1.0, -theta)};
}

Quaternion su2_to_quaternion(const Matrix &r) {
  return {r(0, 0).real(), -r(1, 0).imag(), r(1, 0).real(),
          -r(0, 0).imag()};
}

Matrix quaternion_to_su2(const Quaternion &q) {
  Matrix m(2, 2);
  m << cd(q[0], -q[3]), cd(-q[2], -q[1]), cd(q[2], -q[1]), cd(q[0], q[3]);
  return m;
}

namespace {

double quat_dist(const Quaternion &a, const Quaternion &b, int sign) {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    double d = a[i] - sign * b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

double phase_invariant_distance_2x2(const Matrix &a, const Matrix &b) {
  Quaternion qa = su2_to_quaternion(split_phase(a).su2);
  Quaternion qb = su2_to_quaternion(split_phase(b).su2);
  return std::min(quat_dist(qa, qb, 1), quat_dist(qa, qb, -1));
}

// ---------------------------------------------------------------------------
// HTWord

HTWord::HTWord(std::vector<std::uint8_t> exponents)
    : exponents_(std::move(exponents)) {
  if (exponents_.size() % 2 != 0) {
    throw InvalidInput("HTWord needs an even number of exponents");
  }
  for (std::uint8_t e : exponents_) {
    if (e > 1) throw InvalidInput("HTWord exponents must be 0 or 1");
  }
}

HTWord HTWord::from_bits(std::uint64_t bits, unsigned slots) {
  if (slots > 32) throw InvalidInput("HTWord bit form holds at most 32 slots");
  std::vector<std::uint8_t> e(2 * slots);
  for (unsigned j = 0; j < 2 * slots; ++j) e[j] = (bits >> j) & 1u;
  return HTWord(std::move(e));
}

unsigned HTWord::t_count() const {
  unsigned n = 0;
  for (std::size_t j = 1; j < exponents_.size(); j += 2) n += exponents_[j];
  return n;
}

unsigned HTWord::h_count() const {
  unsigned n = 0;
  for (std::size_t j = 0; j < exponents_.size(); j += 2) n += exponents_[j];
  return n;
}

HTWord HTWord::padded(unsigned slots) const {
  if (slots < this->slots()) {
    throw InvalidInput("cannot pad a word to fewer slots");
  }
  std::vector<std::uint8_t> e = exponents_;
  e.resize(2 * std::size_t{slots}, 0);
  return HTWord(std::move(e));
}

Matrix HTWord::matrix() const {
  Matrix m = identity_matrix(2);
  const Matrix h = gate_h();
  const cd w = std::polar(1.0, M_PI / 4);
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (!exponents_[j]) continue;
    if (j % 2 == 0) {
      m = m * h;
    } else {
      m.col(1) *= w;
    }
  }
  return m;
}

std::string HTWord::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (exponents_[j]) s += (j % 2 == 0) ? 'H' : 'T';
  }
  return s.empty() ? "I" : s;
}

// ---------------------------------------------------------------------------
// Table construction

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_key(const ExactKey &k) {
  return mix64(k.w[0] ^ mix64(k.w[1] ^ mix64(k.w[2])));
}

// Open-addressing set of keys; slots hold indices into `keys`.
class KeySet {
 public:
  KeySet() : slots_(1 << 12, kEmpty) {}

  bool insert(const ExactKey &k) {
    if ((keys_.size() + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    std::size_t p = hash_key(k) & mask;
    while (slots_[p] != kEmpty) {
      if (keys_[slots_[p]] == k) return false;
      p = (p + 1) & mask;
    }
    slots_[p] = static_cast<std::uint32_t>(keys_.size());
    keys_.push_back(k);
    return true;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, kEmpty);
    std::size_t mask = next.size() - 1;
    for (std::uint32_t idx = 0; idx < keys_.size(); ++idx) {
      std::size_t p = hash_key(keys_[idx]) & mask;
      while (next[p] != kEmpty) p = (p + 1) & mask;
      next[p] = idx;
    }
    slots_.swap(next);
  }

  std::vector<std::uint32_t> slots_;
  std::vector<ExactKey> keys_;
};

struct Node {
  ExactU2 m;
  std::uint64_t bits;
  std::uint8_t slots;
};

// Word of y*T.
void append_t(std::uint64_t bits, unsigned slots, std::uint64_t *out_bits,
              unsigned *out_slots) {
  if (slots > 0 && ((bits >> (2 * (slots - 1))) & 3u) == 1u) {
    *out_bits = bits | (std::uint64_t{2} << (2 * (slots - 1)));
    *out_slots = slots;
  } else {
    *out_bits = bits | (std::uint64_t{2} << (2 * slots));
    *out_slots = slots + 1;
  }
}

}  // namespace

ExactU2 exact_word_matrix(std::uint64_t bits, unsigned slots) {
  ExactU2 m = ExactU2::identity();
  for (unsigned s = 0; s < slots; ++s) {
    if ((bits >> (2 * s)) & 1u) m = m.times_h();
    if ((bits >> (2 * s + 1)) & 1u) m = m.times_t();
  }
  return m;
}

void recompute_entry(const ExactU2 &m, double *qa, double *qb, double *qc,
                     double *qd, double *cr, double *ci, double *br,
                     double *bi) {
  auto w = m.to_complex();
  cd ph = std::polar(1.0, -M_PI / 8 * m.j);
  cd q00 = w[0] * ph;
  cd q10 = w[2] * ph;
  *qa = q00.real();
  *qb = -q10.imag();
  *qc = q10.real();
  *qd = -q00.imag();
  *cr = w[0].real();
  *ci = w[0].imag();
  *br = w[2].real();
  *bi = w[2].imag();
}

Matrix WordTable::entry_matrix(std::size_t i) const {
  cd w00 = column_top(i);
  cd w10 = column_bottom(i);
  cd det = std::polar(1.0, M_PI / 4 * klass_[i]);
  Matrix m(2, 2);
  m << w00, -det * std::conj(w10), w10, det * std::conj(w00);
  return m;
}

void WordTable::finalize() {
  const std::size_t n = bits_.size();
  class_off_.fill(0);
  for (std::size_t i = 0; i < n; ++i) ++class_off_[klass_[i] + 1];
  for (unsigned j = 0; j < 8; ++j) class_off_[j + 1] += class_off_[j];
  std::vector<std::size_t> perm(n);
  {
    std::array<std::size_t, 9> fill = class_off_;
    for (std::size_t i = 0; i < n; ++i) perm[fill[klass_[i]]++] = i;
  }
  auto apply = [&perm](auto &v) {
    auto out = v;
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = v[perm[i]];
    v.swap(out);
  };
  apply(bits_);
  apply(slots_);
  apply(tcount_);
  apply(klass_);
  apply(qa_);
  apply(qb_);
  apply(qc_);
  apply(qd_);
  apply(cr_);
  apply(ci_);
  apply(br_);
  apply(bi_);
}

WordTable build_word_table(unsigned max_t, const WordTableLimits &limits) {
  if (max_t > limits.max_depth) {
    throw ResourceLimit("word table depth above configured limit",
                        {{"depth", std::to_string(max_t)},
                         {"limit", std::to_string(limits.max_depth)}});
  }
  WordTable t;
  t.max_t_ = max_t;
  KeySet seen;

  auto record = [&](const Node &nd, unsigned tcount) {
    if (t.bits_.size() >= limits.max_entries) {
      throw ResourceLimit("word table entry budget exceeded",
                          {{"max_entries", std::to_string(limits.max_entries)},
                           {"depth", std::to_string(max_t)}});
    }
    double v[8];
    recompute_entry(nd.m, &v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6],
                    &v[7]);
    t.bits_.push_back(nd.bits);
    t.slots_.push_back(nd.slots);
    t.tcount_.push_back(static_cast<std::uint8_t>(tcount));
    t.klass_.push_back(nd.m.j);
    t.qa_.push_back(v[0]);
    t.qb_.push_back(v[1]);
    t.qc_.push_back(v[2]);
    t.qd_.push_back(v[3]);
    t.cr_.push_back(v[4]);
    t.ci_.push_back(v[5]);
    t.br_.push_back(v[6]);
    t.bi_.push_back(v[7]);
  };

  std::vector<Node> frontier;
  Node id{ExactU2::identity(), 0, 0};
  Node had{ExactU2::hadamard(), 1, 1};
  for (const Node &nd : {id, had}) {
    if (seen.insert(canonical_key(nd.m))) {
      record(nd, 0);
      frontier.push_back(nd);
    }
  }
  for (unsigned level = 1; level <= max_t; ++level) {
    std::vector<Node> next;
    next.reserve(frontier.size() * 2);
    for (const Node &y : frontier) {
      Node c;
      c.m = y.m.times_t();
      unsigned s;
      if (y.slots >= 32) throw ResourceLimit("word exceeds 32 slots");
      append_t(y.bits, y.slots, &c.bits, &s);
      c.slots = static_cast<std::uint8_t>(s);
      if (seen.insert(canonical_key(c.m))) {
        record(c, level);
        next.push_back(c);
      }
    }
    const std::size_t n_c = next.size();
    for (std::size_t i = 0; i < n_c; ++i) {
      const Node &c = next[i];
      Node d;
      d.m = c.m.times_h();
      d.bits = c.bits | (std::uint64_t{1} << (2 * c.slots));
      if (c.slots >= 32) throw ResourceLimit("word exceeds 32 slots");
      d.slots = static_cast<std::uint8_t>(c.slots + 1);
      if (seen.insert(canonical_key(d.m))) {
        record(d, level);
        next.push_back(d);
      }
    }
    frontier.swap(next);
    if (frontier.empty()) break;
  }
  t.finalize();
  return t;
}

std::vector<std::uint64_t> WordTable::level_counts() const {
  std::vector<std::uint64_t> c(max_t_ + 1, 0);
  for (std::uint8_t v : tcount_) ++c[v];
  return c;
}

unsigned WordTable::max_slots() const {
  unsigned m = 0;
  for (std::uint8_t s : slots_) m = std::max<unsigned>(m, s);
  return m;
}

WordTable::Match WordTable::nearest(const Quaternion &r) const {
  if (size() == 0) throw InvalidInput("empty word table");
  kernels::ArgMax am = kernels::max_dot4(qa_.data(), qb_.data(), qc_.data(),
                                         qd_.data(), size(), r.data(), true);
  Quaternion q = quaternion(am.index);
  double dot = q[0] * r[0] + q[1] * r[1] + q[2] * r[2] + q[3] * r[3];
  int sign = dot < 0 ? -1 : 1;
  return {am.index, quat_dist(r, q, sign), sign};
}

WordTable::Match WordTable::nearest_in_class(const Quaternion &r, unsigned j,
                                             int sign) const {
  std::size_t b = class_begin(j);
  std::size_t e = class_end(j);
  if (b == e) return {size(), INFINITY, sign};
  Quaternion s = {sign * r[0], sign * r[1], sign * r[2], sign * r[3]};
  kernels::ArgMax am = kernels::max_dot4(qa_.data() + b, qb_.data() + b,
                                         qc_.data() + b, qd_.data() + b,
                                         e - b, s.data(), false);
  std::size_t idx = b + am.index;
  return {idx, quat_dist(s, quaternion(idx), 1), sign};
}

WordTable::Match WordTable::nearest_column(double psi) const {
  if (size() == 0) throw InvalidInput("empty word table");
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  kernels::ArgMax am =
      kernels::max_dot2(cr_.data(), ci_.data(), size(), c, s);
  cd top = column_top(am.index) - cd(c, s);
  cd bot = column_bottom(am.index);
  return {am.index, std::sqrt(std::norm(top) + std::norm(bot)), 1};
}

bool WordTable::find_exact(const Matrix &w, std::size_t *index) const {
  Quaternion q = su2_to_quaternion(split_phase(w).su2);
  Match m = nearest(q);
  if (m.distance > 1e-9) return false;
  if (index) *index = m.index;
  return true;
}

HTWord approximate_su2(const Matrix &r, double eps, const WordTable &table,
                       unsigned pad_slots, double *distance) {
  return approximate_su2(r, eps, WordSearcher(table), pad_slots, distance);
}

HTWord approximate_su2(const Matrix &r, double eps,
                       const WordSearcher &searcher, unsigned pad_slots,
                       double *distance) {
  if (r.rows() != 2 || r.cols() != 2) {
    throw DimensionMismatch("approximate_su2 expects a 2x2 matrix");
  }
  cd det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
  if (std::abs(det - 1.0) > 1e-10) {
    throw InvalidInput("approximate_su2 expects det R = 1");
  }
  WordApprox a = searcher.free(su2_to_quaternion(r), eps);
  if (distance) *distance = a.distance;
  if (a.distance > eps) {
    throw UnreachablePrecision(
        "word table cannot reach the requested precision", eps, a.distance);
  }
  return pad_slots ? a.word.padded(pad_slots) : a.word;
}

// ---------------------------------------------------------------------------
// Quaternions and the two-tier search

namespace {

using Q2 = std::array<cd, 4>;

Q2 q_to_m(const Quaternion &q) {
  return {cd(q[0], -q[3]), cd(-q[2], -q[1]), cd(q[2], -q[1]),
          cd(q[0], q[3])};
}

Quaternion m_to_q(const Q2 &m) {
  return {m[0].real(), -m[2].imag(), m[2].real(), -m[0].imag()};
}

}  // namespace

Quaternion quaternion_multiply(const Quaternion &x, const Quaternion &y) {
  Q2 a = q_to_m(x);
  Q2 b = q_to_m(y);
  Q2 c = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  return m_to_q(c);
}

Quaternion quaternion_conjugate(const Quaternion &x) {
  return {x[0], -x[1], -x[2], -x[3]};
}

HTWord HTWord::concat(const HTWord &other) const {
  std::vector<std::uint8_t> e = exponents_;
  e.insert(e.end(), other.exponents_.begin(), other.exponents_.end());
  return HTWord(std::move(e));
}

WordSearcher::WordSearcher(const WordTable &table, int prefix_t)
    : table_(&table) {
  if (table.size() == 0) throw InvalidInput("empty word table");
  std::vector<std::uint64_t> counts = table.level_counts();
  if (prefix_t < 0) {
    std::uint64_t cum = 0;
    prefix_t_ = 0;
    for (unsigned t = 0; t < counts.size(); ++t) {
      cum += counts[t];
      if (cum > 4096) break;
      prefix_t_ = t;
    }
  } else {
    prefix_t_ = std::min<unsigned>(static_cast<unsigned>(prefix_t),
                                   table.max_t());
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.t_count(i) <= prefix_t_) prefix_.push_back(i);
  }
}

HTWord WordSearcher::concat(std::size_t a, std::size_t b) const {
  return table_->word(a).concat(table_->word(b));
}

WordApprox WordSearcher::free_single(const Quaternion &r) const {
  WordTable::Match m = table_->nearest(r);
  double phase = M_PI / 8 * table_->phase_class(m.index) +
                 (m.sign < 0 ? M_PI : 0.0);
  return {table_->word(m.index), m.distance, phase};
}

WordApprox WordSearcher::free_pair(const Quaternion &r) const {
  const WordTable &t = *table_;
  double best = -1;
  std::size_t best_a = 0, best_b = 0;
  for (std::size_t a : prefix_) {
    Quaternion tq = quaternion_multiply(quaternion_conjugate(t.quaternion(a)),
                                        r);
    kernels::ArgMax am = kernels::max_dot4(
        t.qa_.data(), t.qb_.data(), t.qc_.data(), t.qd_.data(), t.size(),
        tq.data(), true);
    if (am.value > best) {
      best = am.value;
      best_a = a;
      best_b = am.index;
    }
  }
  Quaternion tq = quaternion_multiply(
      quaternion_conjugate(t.quaternion(best_a)), r);
  Quaternion qb = t.quaternion(best_b);
  double dot = tq[0] * qb[0] + tq[1] * qb[1] + tq[2] * qb[2] + tq[3] * qb[3];
  int sign = dot < 0 ? -1 : 1;
  double phase = M_PI / 8 * (t.phase_class(best_a) + t.phase_class(best_b)) +
                 (sign < 0 ? M_PI : 0.0);
  return {concat(best_a, best_b), quat_dist(tq, qb, sign),
          std::remainder(phase, 2 * M_PI)};
}

WordApprox WordSearcher::locked_single(const Quaternion &r,
                                       unsigned m) const {
  WordTable::Match mt = table_->nearest_in_class(r, m % 8, m < 8 ? 1 : -1);
  if (mt.index >= table_->size()) return {HTWord(), INFINITY, M_PI / 8 * m};
  return {table_->word(mt.index), mt.distance, M_PI / 8 * m};
}

WordApprox WordSearcher::locked_pair(const Quaternion &r, unsigned m) const {
  const WordTable &t = *table_;
  double best = -INFINITY;
  std::size_t best_a = 0, best_b = 0;
  int best_s = 1;
  for (std::size_t a : prefix_) {
    int ja = static_cast<int>(t.phase_class(a));
    int jb = ((static_cast<int>(m) - ja) % 8 + 8) % 8;
    int d = static_cast<int>(m) - ja - jb;  // multiple of 8
    int s = ((d / 8) % 2 == 0) ? 1 : -1;
    std::size_t b0 = t.class_begin(static_cast<unsigned>(jb));
    std::size_t b1 = t.class_end(static_cast<unsigned>(jb));
    if (b0 == b1) continue;
    Quaternion tq = quaternion_multiply(quaternion_conjugate(t.quaternion(a)),
                                        r);
    for (double &v : tq) v *= s;
    kernels::ArgMax am = kernels::max_dot4(
        t.qa_.data() + b0, t.qb_.data() + b0, t.qc_.data() + b0,
        t.qd_.data() + b0, b1 - b0, tq.data(), false);
    if (am.value > best) {
      best = am.value;
      best_a = a;
      best_b = b0 + am.index;
      best_s = s;
    }
  }
  if (best == -INFINITY) return {HTWord(), INFINITY, M_PI / 8 * m};
  Quaternion tq = quaternion_multiply(
      quaternion_conjugate(t.quaternion(best_a)), r);
  for (double &v : tq) v *= best_s;
  return {concat(best_a, best_b), quat_dist(tq, t.quaternion(best_b), 1),
          M_PI / 8 * m};
}

WordApprox WordSearcher::column_single(double psi) const {
  WordTable::Match m = table_->nearest_column(psi);
  return {table_->word(m.index), m.distance, psi};
}

WordApprox WordSearcher::column_pair(double psi) const {
  const WordTable &t = *table_;
  const cd target = std::polar(1.0, psi);
  double best = -INFINITY;
  std::size_t best_a = 0, best_b = 0;
  for (std::size_t a : prefix_) {
    Matrix am = t.entry_matrix(a);
    cd c0 = target * std::conj(am(0, 0));
    cd c1 = target * std::conj(am(0, 1));
    const double q[4] = {c0.real(), c0.imag(), c1.real(), c1.imag()};
    kernels::ArgMax r = kernels::max_dot4(t.cr_.data(), t.ci_.data(),
                                          t.br_.data(), t.bi_.data(),
                                          t.size(), q, false);
    if (r.value > best) {
      best = r.value;
      best_a = a;
      best_b = r.index;
    }
  }
  Matrix am = t.entry_matrix(best_a);
  cd top = am(0, 0) * t.column_top(best_b) + am(0, 1) * t.column_bottom(best_b);
  cd bot = am(1, 0) * t.column_top(best_b) + am(1, 1) * t.column_bottom(best_b);
  double dist = std::sqrt(std::norm(top - target) + std::norm(bot));
  return {concat(best_a, best_b), dist, psi};
}

WordApprox WordSearcher::free(const Quaternion &r, double good_enough) const {
  WordApprox s = free_single(r);
  if (s.distance <= good_enough) return s;
  WordApprox p = free_pair(r);
  return p.distance < s.distance ? p : s;
}

WordApprox WordSearcher::locked(const Quaternion &r, unsigned m,
                                double good_enough) const {
  WordApprox s = locked_single(r, m);
  if (s.distance <= good_enough) return s;
  WordApprox p = locked_pair(r, m);
  return p.distance < s.distance ? p : s;
}

WordApprox WordSearcher::column(double psi, double good_enough) const {
  WordApprox s = column_single(psi);
  if (s.distance <= good_enough) return s;
  WordApprox p = column_pair(psi);
  return p.distance < s.distance ? p : s;
}

double sampled_covering_radius(const WordTable &table, std::size_t samples,
                               std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Quaternion q = su2_to_quaternion(haar_su2(rng));
    worst = std::max(worst, table.nearest(q).distance);
  }
  return worst;
}

}  // namespace csdsynth
