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

#include "csdsynth/boolfun.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace csdsynth {

// ---------------------------------------------------------------------------
// TruthTable

TruthTable::TruthTable(unsigned n_vars, unsigned r_out)
    : n_vars_(n_vars), r_out_(r_out) {
  if (n_vars > kMaxTruthTableVars) {
    throw ResourceLimit("truth table has too many variables",
                        {{"n_vars", std::to_string(n_vars)}});
  }
  const std::size_t words = (rows() + 63) / 64;
  cols_.assign(r_out, std::vector<std::uint64_t>(words, 0));
}

void TruthTable::set(std::size_t x, unsigned out, bool v) {
  std::uint64_t &w = cols_[out][x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  w = v ? (w | bit) : (w & ~bit);
}

bool TruthTable::output_is_zero(unsigned out) const {
  for (std::uint64_t w : cols_[out]) {
    if (w) return false;
  }
  return true;
}

TruthTable TruthTable::output(unsigned out) const {
  TruthTable t(n_vars_, 1);
  t.cols_[0] = cols_[out];
  return t;
}

bool TruthTable::operator==(const TruthTable &o) const {
  return n_vars_ == o.n_vars_ && r_out_ == o.r_out_ && cols_ == o.cols_;
}

TruthTable random_truth_table(unsigned n_vars, unsigned r_out,
                              std::uint64_t seed) {
  TruthTable t(n_vars, r_out);
  Rng rng(seed);
  for (std::size_t x = 0; x < t.rows(); ++x) {
    for (unsigned o = 0; o < r_out; ++o) t.set(x, o, rng() & 1u);
  }
  return t;
}

TruthTable parse_truth_table(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::string &out) {
    while (std::getline(in, line)) {
      ++lineno;
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      auto e = line.find_last_not_of(" \t\r");
      out = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  };
  std::string s;
  if (!next(s)) throw ParseError("truth table: missing header", lineno);
  std::istringstream hs(s);
  std::string tag;
  long long n = -1, r = -1;
  hs >> tag >> n >> r;
  if (tag != "tt" || n < 0 || r < 0 || !hs.eof()) {
    throw ParseError("truth table: expected 'tt <n_vars> <r_out>'", lineno);
  }
  if (n > kMaxTruthTableVars) {
    throw ParseError("truth table: too many variables", lineno);
  }
  TruthTable t(static_cast<unsigned>(n), static_cast<unsigned>(r));
  for (std::size_t x = 0; x < t.rows(); ++x) {
    if (!next(s)) throw ParseError("truth table: missing row", lineno);
    // Hex digits, least significant last; output j is bit j.
    unsigned bit = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      char ch = *it;
      int v;
      if (ch >= '0' && ch <= '9') v = ch - '0';
      else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
      else throw ParseError("truth table: bad hex digit", lineno);
      for (int b = 0; b < 4; ++b, ++bit) {
        if (!((v >> b) & 1)) continue;
        if (bit >= t.r_out()) {
          throw ParseError("truth table: row wider than r_out", lineno);
        }
        t.set(x, bit, true);
      }
    }
  }
  if (next(s)) throw ParseError("truth table: trailing rows", lineno);
  return t;
}

std::string truth_table_to_text(const TruthTable &t) {
  static const char *kHex = "0123456789abcdef";
  std::string out =
      "tt " + std::to_string(t.n_vars()) + " " + std::to_string(t.r_out()) +
      "\n";
  const unsigned digits = std::max(1u, (t.r_out() + 3) / 4);
  for (std::size_t x = 0; x < t.rows(); ++x) {
    std::string row(digits, '0');
    for (unsigned d = 0; d < digits; ++d) {
      int v = 0;
      for (unsigned b = 0; b < 4; ++b) {
        unsigned o = 4 * d + b;
        if (o < t.r_out() && t.get(x, o)) v |= 1 << b;
      }
      row[digits - 1 - d] = kHex[v];
    }
    out += row;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// ANF

AnfPolynomial::AnfPolynomial(unsigned n_vars,
                             std::vector<std::uint64_t> monomials)
    : n_vars_(n_vars), monomials_(std::move(monomials)) {
  const std::uint64_t limit =
      n_vars >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_vars) - 1;
  std::sort(monomials_.begin(), monomials_.end());
  // Equal monomials cancel in pairs.
  std::vector<std::uint64_t> kept;
  for (std::size_t i = 0; i < monomials_.size();) {
    std::size_t j = i;
    while (j < monomials_.size() && monomials_[j] == monomials_[i]) ++j;
    if ((j - i) & 1) kept.push_back(monomials_[i]);
    i = j;
  }
  monomials_ = std::move(kept);
  for (std::uint64_t a : monomials_) {
    if (a & ~limit) throw InvalidInput("monomial uses an unknown variable");
  }
}

bool AnfPolynomial::evaluate(std::uint64_t x) const {
  bool v = false;
  for (std::uint64_t a : monomials_) v ^= (x & a) == a;
  return v;
}

bool AnfPolynomial::depends_on(unsigned var) const {
  const std::uint64_t bit = std::uint64_t{1} << (n_vars_ - 1 - var);
  for (std::uint64_t a : monomials_) {
    if (a & bit) return true;
  }
  return false;
}

TruthTable AnfPolynomial::to_truth_table() const {
  TruthTable t(n_vars_, 1);
  for (std::size_t x = 0; x < t.rows(); ++x) t.set(x, 0, evaluate(x));
  return t;
}

AnfPolynomial anf_from_truth_table(const TruthTable &t) {
  if (t.r_out() != 1) {
    throw InvalidInput("anf_from_truth_table needs a single output",
                       {{"r_out", std::to_string(t.r_out())}});
  }
  const std::size_t rows = t.rows();
  std::vector<std::uint8_t> f(rows);
  for (std::size_t x = 0; x < rows; ++x) f[x] = t.get(x, 0);
  for (std::size_t step = 1; step < rows; step <<= 1) {
    for (std::size_t x = 0; x < rows; ++x) {
      if (x & step) f[x] ^= f[x ^ step];
    }
  }
  std::vector<std::uint64_t> mons;
  for (std::size_t a = 0; a < rows; ++a) {
    if (f[a]) mons.push_back(a);
  }
  return AnfPolynomial(t.n_vars(), std::move(mons));
}

bool FactoredAnf::evaluate(std::uint64_t x) const {
  const unsigned rest = n_vars - k;
  const std::uint64_t hi = x >> rest;
  const std::uint64_t lo = x & ((std::uint64_t{1} << rest) - 1);
  bool v = false;
  for (const auto &[b, g] : terms) {
    if ((hi & b) == b) v ^= g.evaluate(lo);
  }
  return v;
}

FactoredAnf factor_anf(const AnfPolynomial &p, unsigned k) {
  if (k > p.n_vars()) {
    throw InvalidInput("factor_anf: k must be in [0, n_vars]",
                       {{"k", std::to_string(k)},
                        {"n_vars", std::to_string(p.n_vars())}});
  }
  const unsigned rest = p.n_vars() - k;
  const std::uint64_t lo_mask = (std::uint64_t{1} << rest) - 1;
  std::map<std::uint64_t, std::vector<std::uint64_t>> split;
  for (std::uint64_t a : p.monomials()) {
    split[a >> rest].push_back(a & lo_mask);
  }
  FactoredAnf f;
  f.n_vars = p.n_vars();
  f.k = k;
  for (auto &[b, mons] : split) {
    f.terms.emplace(b, AnfPolynomial(rest, std::move(mons)));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Monomial generation

std::vector<std::vector<unsigned>> monomial_order(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  for (unsigned d = 2; d <= n; ++d) {
    // Combinations of size d in lexicographic order.
    cur.resize(d);
    for (unsigned i = 0; i < d; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      int i = static_cast<int>(d) - 1;
      while (i >= 0 && cur[i] == n - d + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++cur[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) {
        cur[j] = cur[j - 1] + 1;
      }
    }
  }
  return out;
}

void append_monomials(Circuit &c, const std::vector<Qubit> &vars,
                      const std::vector<Qubit> &outs) {
  const auto order = monomial_order(static_cast<unsigned>(vars.size()));
  if (outs.size() != order.size()) {
    throw DimensionMismatch("append_monomials: wrong register size");
  }
  std::map<std::vector<unsigned>, Qubit> reg;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const auto &mono = order[m];
    std::vector<unsigned> prefix(mono.begin(), mono.end() - 1);
    Qubit a = prefix.size() == 1 ? vars[prefix[0]] : reg.at(prefix);
    c.ccx(a, vars[mono.back()], outs[m]);
    reg.emplace(mono, outs[m]);
  }
}

Circuit monomial_circuit(unsigned n) {
  if (n < 2 || n > 12) {
    throw InvalidInput("monomial_circuit: n must be in [2, 12]",
                       {{"n", std::to_string(n)}});
  }
  const std::size_t count = (std::size_t{1} << n) - n - 1;
  Circuit c(n, count);
  std::vector<Qubit> vars(n), outs(count);
  for (unsigned i = 0; i < n; ++i) vars[i] = i;
  for (std::size_t i = 0; i < count; ++i) outs[i] = static_cast<Qubit>(n + i);
  append_monomials(c, vars, outs);
  return c;
}

const char *oracle_backend_name(OracleBackend b) {
  return b == OracleBackend::Naive ? "naive" : "select-swap";
}

OracleBackend oracle_backend_from_name(const std::string &name) {
  if (name == "naive") return OracleBackend::Naive;
  if (name == "select-swap" || name == "select_swap") {
    return OracleBackend::SelectSwap;
  }
  throw InvalidInput("unknown oracle backend", {{"backend", name}});
}

}  // namespace csdsynth
