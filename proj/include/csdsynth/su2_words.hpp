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
#include <cstdint>
#include <string>
#include <vector>

#include "csdsynth/matrix.hpp"

namespace csdsynth {

/** V = e^{i theta} su2 with theta in [0, pi) and det su2 = 1. */
struct PhasedSu2 {
  double theta;
  Matrix su2;
};

PhasedSu2 split_phase(const Matrix &v);

/**
 * Unit quaternion (a, b, c, d) of R = a I - i (b X + c Y + d Z), so
 * R00 = a - i d and R10 = c - i b.
 */
using Quaternion = std::array<double, 4>;

Quaternion su2_to_quaternion(const Matrix &r);
Matrix quaternion_to_su2(const Quaternion &q);

/** min over phi of ||A - e^{i phi} B|| for 2x2 unitaries. */
double phase_invariant_distance_2x2(const Matrix &a, const Matrix &b);

/**
 * Exponent string (f_1, ..., f_{2L}) for H^{f_1} T^{f_2} ... T^{f_{2L}}.
 * Slot s holds (f_{2s+1}, f_{2s+2}).
 */
class HTWord {
 public:
  HTWord() = default;
  explicit HTWord(std::vector<std::uint8_t> exponents);
  /** Slot s from bits 2s (H) and 2s+1 (T) of `bits`. */
  static HTWord from_bits(std::uint64_t bits, unsigned slots);

  unsigned slots() const {
    return static_cast<unsigned>(exponents_.size() / 2);
  }
  const std::vector<std::uint8_t> &exponents() const { return exponents_; }
  /** f_{j+1}, 0-based. */
  std::uint8_t exponent(std::size_t j) const { return exponents_[j]; }
  unsigned t_count() const;
  unsigned h_count() const;

  /** Zero-padded to `slots` slots; throws if shorter than the word. */
  HTWord padded(unsigned slots) const;
  /** Matrix product this * other as one word. */
  HTWord concat(const HTWord &other) const;
  Matrix matrix() const;
  std::string to_string() const;

  bool operator==(const HTWord &o) const {
    return exponents_ == o.exponents_;
  }

 private:
  std::vector<std::uint8_t> exponents_;
};

class WordSearcher;

struct WordTableLimits {
  unsigned max_depth = 30;
  std::size_t max_entries = std::size_t{1} << 24;
};

/**
 * All elements of <H, T> with at most max_t T gates, one entry per class
 * modulo global phase, each with a shortest word.
 *
 * Entry i also stores the phase class j = arg(det)/(pi/4) of its word
 * matrix W; with beta = j pi / 8, e^{-i beta} W is in SU(2) and its
 * quaternion is kept for nearest-neighbour scans. Entries are grouped by
 * class in BFS order.
 */
class WordTable {
 public:
  struct Match {
    std::size_t index;
    double distance;
    /** +1 or -1: the word matrix is near sign * e^{i beta} R. */
    int sign;
  };

  WordTable() = default;

  unsigned max_t() const { return max_t_; }
  std::size_t size() const { return bits_.size(); }
  HTWord word(std::size_t i) const {
    return HTWord::from_bits(bits_[i], slots_[i]);
  }
  std::uint64_t word_bits(std::size_t i) const { return bits_[i]; }
  unsigned word_slots(std::size_t i) const { return slots_[i]; }
  unsigned t_count(std::size_t i) const { return tcount_[i]; }
  unsigned phase_class(std::size_t i) const { return klass_[i]; }
  Quaternion quaternion(std::size_t i) const {
    return {qa_[i], qb_[i], qc_[i], qd_[i]};
  }
  /** First column (W00, W10) of the word matrix. */
  cd column_top(std::size_t i) const { return {cr_[i], ci_[i]}; }
  cd column_bottom(std::size_t i) const { return {br_[i], bi_[i]}; }
  /** Numeric word matrix rebuilt from the stored fields. */
  Matrix entry_matrix(std::size_t i) const;

  std::size_t class_begin(unsigned j) const { return class_off_[j]; }
  std::size_t class_end(unsigned j) const { return class_off_[j + 1]; }

  /** Element counts by minimal T-count, index 0..max_t. */
  std::vector<std::uint64_t> level_counts() const;
  unsigned max_slots() const;

  /** Closest entry to R modulo global phase. */
  Match nearest(const Quaternion &r) const;
  /** Closest entry of class j to sign * R, sign fixed by the caller. */
  Match nearest_in_class(const Quaternion &r, unsigned j, int sign) const;
  /** Entry whose first column is closest to (e^{i psi}, 0). */
  Match nearest_column(double psi) const;

  /** Index of an exact match of the matrix's class, if present. */
  bool find_exact(const Matrix &w, std::size_t *index) const;

  // Construction and persistence.
  friend WordTable build_word_table(unsigned max_t,
                                    const WordTableLimits &limits);
  friend std::string serialize_word_table(const WordTable &t);
  friend WordTable deserialize_word_table(const std::string &bytes);
  friend class WordSearcher;

 private:
  void finalize();

  unsigned max_t_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> slots_;
  std::vector<std::uint8_t> tcount_;
  std::vector<std::uint8_t> klass_;
  std::vector<double> qa_, qb_, qc_, qd_;
  std::vector<double> cr_, ci_, br_, bi_;
  std::array<std::size_t, 9> class_off_{};
};

WordTable build_word_table(unsigned max_t, const WordTableLimits &limits = {});

/** "HTW1", u32 max_t, u64 count, then per entry: u64 bits, u8 slots,
 * u8 t-count, u8 class. Numeric fields are recomputed on load. */
std::string serialize_word_table(const WordTable &t);
WordTable deserialize_word_table(const std::string &bytes);

/** Directory for cached tables: $CSDSYNTH_CACHE_DIR, else
 * $XDG_CACHE_HOME/csdsynth, else $HOME/.cache/csdsynth, else ./.csdsynth. */
std::string word_table_cache_dir();
std::string word_table_cache_path(unsigned max_t);

/** Loads the cached table for max_t, or builds and caches it. */
WordTable load_or_build_word_table(unsigned max_t,
                                   const WordTableLimits &limits = {},
                                   bool *from_cache = nullptr);

/**
 * Word within eps of R modulo global phase (two-tier search), padded to
 * `pad_slots` slots (0 keeps the natural length). Throws
 * UnreachablePrecision naming the achieved distance when it exceeds eps.
 */
HTWord approximate_su2(const Matrix &r, double eps, const WordTable &table,
                       unsigned pad_slots = 0, double *distance = nullptr);
HTWord approximate_su2(const Matrix &r, double eps,
                       const WordSearcher &searcher, unsigned pad_slots = 0,
                       double *distance = nullptr);

/** Quaternion of the SU(2) product of two quaternions. */
Quaternion quaternion_multiply(const Quaternion &x, const Quaternion &y);
Quaternion quaternion_conjugate(const Quaternion &x);

/** An H/T word W and how it relates to the search target. */
struct WordApprox {
  HTWord word;
  /** Distance actually achieved (see the search functions). */
  double distance = 0;
  /** For SU(2) targets R: W is within `distance` of e^{i phase} R. */
  double phase = 0;
};

/**
 * Two-tier word search over a table. The single tier returns the nearest
 * table word. The pair tier scans products A B with A among the table
 * words of T-count <= prefix_t and B anywhere in the table, and returns
 * the concatenated word. Each query tries the single tier first and only
 * falls back to pairs when the single word misses `good_enough`.
 */
class WordSearcher {
 public:
  /** prefix_t < 0 picks the largest T-count whose prefix set has at most
   * 4096 entries. */
  explicit WordSearcher(const WordTable &table, int prefix_t = -1);

  const WordTable &table() const { return *table_; }
  unsigned prefix_t() const { return prefix_t_; }
  std::size_t prefix_size() const { return prefix_.size(); }

  /** W near R up to any global phase. */
  WordApprox free(const Quaternion &r, double good_enough) const;
  /** W near e^{i m pi/8} R for the fixed m in [0, 16). */
  WordApprox locked(const Quaternion &r, unsigned m, double good_enough) const;
  /** Only the first column matters: W|0> near e^{i psi}|0>. */
  WordApprox column(double psi, double good_enough) const;

  WordApprox free_single(const Quaternion &r) const;
  WordApprox free_pair(const Quaternion &r) const;
  WordApprox locked_single(const Quaternion &r, unsigned m) const;
  WordApprox locked_pair(const Quaternion &r, unsigned m) const;
  WordApprox column_single(double psi) const;
  WordApprox column_pair(double psi) const;

 private:
  HTWord concat(std::size_t a, std::size_t b) const;

  const WordTable *table_;
  unsigned prefix_t_ = 0;
  std::vector<std::size_t> prefix_;
};

/** Max nearest-neighbour distance over `samples` Haar-random SU(2). */
double sampled_covering_radius(const WordTable &table, std::size_t samples,
                               std::uint64_t seed);

}  // namespace csdsynth
