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
#include <filesystem>

#include "csdsynth/su2_words.hpp"
#include "csdsynth/unitary_io.hpp"
#include "word_table_internal.hpp"

namespace csdsynth {

namespace {

constexpr char kMagic[4] = {'H', 'T', 'W', '1'};
constexpr std::size_t kHeader = 16;
constexpr std::size_t kEntry = 11;

template <typename T>
void put_le(std::string &out, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(b, sizeof(T));
}

template <typename T>
T get_le(const std::string &in, std::size_t off) {
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  return v;
}

}  // namespace

std::string serialize_word_table(const WordTable &t) {
  std::string out(kMagic, 4);
  out.reserve(kHeader + t.size() * kEntry);
  put_le<std::uint32_t>(out, t.max_t_);
  put_le<std::uint64_t>(out, t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    put_le<std::uint64_t>(out, t.bits_[i]);
    out.push_back(static_cast<char>(t.slots_[i]));
    out.push_back(static_cast<char>(t.tcount_[i]));
    out.push_back(static_cast<char>(t.klass_[i]));
  }
  return out;
}

WordTable deserialize_word_table(const std::string &bytes) {
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("word table cache: bad magic", 0);
  }
  WordTable t;
  t.max_t_ = get_le<std::uint32_t>(bytes, 4);
  std::uint64_t n = get_le<std::uint64_t>(bytes, 8);
  if (bytes.size() != kHeader + n * kEntry) {
    throw ParseError("word table cache: truncated", 0);
  }
  t.bits_.resize(n);
  t.slots_.resize(n);
  t.tcount_.resize(n);
  t.klass_.resize(n);
  for (auto *v : {&t.qa_, &t.qb_, &t.qc_, &t.qd_, &t.cr_, &t.ci_, &t.br_,
                  &t.bi_}) {
    v->resize(n);
  }
  std::size_t off = kHeader;
  for (std::size_t i = 0; i < n; ++i, off += kEntry) {
    t.bits_[i] = get_le<std::uint64_t>(bytes, off);
    t.slots_[i] = static_cast<std::uint8_t>(bytes[off + 8]);
    t.tcount_[i] = static_cast<std::uint8_t>(bytes[off + 9]);
    t.klass_[i] = static_cast<std::uint8_t>(bytes[off + 10]);
    if (t.slots_[i] > 32 || t.tcount_[i] > t.max_t_ || t.klass_[i] > 7) {
      throw ParseError("word table cache: corrupt entry", i);
    }
    ExactU2 m = exact_word_matrix(t.bits_[i], t.slots_[i]);
    if (m.j != t.klass_[i]) {
      throw ParseError("word table cache: class mismatch", i);
    }
    recompute_entry(m, &t.qa_[i], &t.qb_[i], &t.qc_[i], &t.qd_[i], &t.cr_[i],
                    &t.ci_[i], &t.br_[i], &t.bi_[i]);
  }
  // Entries were written grouped by class; finalize rebuilds offsets.
  t.finalize();
  return t;
}

std::string word_table_cache_dir() {
  if (const char *d = std::getenv("CSDSYNTH_CACHE_DIR"); d && *d) return d;
  if (const char *x = std::getenv("XDG_CACHE_HOME"); x && *x) {
    return std::string(x) + "/csdsynth";
  }
  if (const char *h = std::getenv("HOME"); h && *h) {
    return std::string(h) + "/.cache/csdsynth";
  }
  return ".csdsynth";
}

std::string word_table_cache_path(unsigned max_t) {
  return word_table_cache_dir() + "/htw-" + std::to_string(max_t) + ".bin";
}

WordTable load_or_build_word_table(unsigned max_t,
                                   const WordTableLimits &limits,
                                   bool *from_cache) {
  if (max_t > limits.max_depth) {
    throw ResourceLimit("word table depth above configured limit",
                        {{"depth", std::to_string(max_t)},
                         {"limit", std::to_string(limits.max_depth)}});
  }
  const std::string path = word_table_cache_path(max_t);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      WordTable t = deserialize_word_table(read_file(path));
      if (t.max_t() == max_t && t.size() <= limits.max_entries) {
        if (from_cache) *from_cache = true;
        return t;
      }
    } catch (const Error &) {
      // fall through and rebuild
    }
  }
  WordTable t = build_word_table(max_t, limits);
  if (from_cache) *from_cache = false;
  try {
    std::filesystem::create_directories(word_table_cache_dir(), ec);
    write_file_atomic(path, serialize_word_table(t));
  } catch (const Error &) {
    // cache is best effort
  }
  return t;
}

}  // namespace csdsynth
