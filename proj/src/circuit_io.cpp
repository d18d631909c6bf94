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

#include "csdsynth/circuit_io.hpp"

#include <charconv>
#include <sstream>

namespace csdsynth {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError("expected a non-negative integer, got '" +
                         std::string(tok) + "'",
                     line_no);
  }
  return v;
}

std::size_t parse_header(std::string_view line, std::string_view key,
                         std::size_t line_no) {
  auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != key) {
    throw ParseError("expected header '" + std::string(key) + " <count>'",
                     line_no);
  }
  return parse_uint(toks[1], line_no);
}

}  // namespace

std::string serialize(const Circuit &c) {
  std::string out;
  out.reserve(16 + c.size() * 16);
  out += "data " + std::to_string(c.n_data()) + "\n";
  out += "ancilla " + std::to_string(c.n_ancilla()) + "\n";
  for (const Gate &g : c.gates()) {
    out += gate_name(g.kind);
    for (unsigned i = 0; i < g.arity(); ++i) {
      out += " q";
      out += std::to_string(g.q[i]);
    }
    out += '\n';
  }
  return out;
}

Circuit deserialize(const std::string &text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::string_view rest(text);
  std::size_t line_no = 0;
  while (!rest.empty()) {
    ++line_no;
    std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{}
                                        : rest.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    lines.emplace_back(line_no, line);
  }
  if (lines.size() < 2) {
    throw ParseError("missing 'data' and 'ancilla' headers", line_no);
  }
  std::size_t n_data = parse_header(lines[0].second, "data", lines[0].first);
  std::size_t n_anc =
      parse_header(lines[1].second, "ancilla", lines[1].first);
  Circuit c(n_data, n_anc);
  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto [no, line] = lines[li];
    auto toks = split_ws(line);
    GateKind kind;
    try {
      kind = gate_kind_from_name(toks[0]);
    } catch (const InvalidInput &) {
      throw ParseError("unknown gate kind '" + std::string(toks[0]) + "'",
                       no);
    }
    unsigned arity = gate_arity(kind);
    if (toks.size() != arity + 1) {
      throw ParseError("wrong number of qubits for '" +
                           std::string(toks[0]) + "'",
                       no);
    }
    Qubit q[3] = {0, 0, 0};
    for (unsigned i = 0; i < arity; ++i) {
      std::string_view t = toks[i + 1];
      if (t.size() < 2 || t[0] != 'q') {
        throw ParseError("qubit operand must look like q<index>", no);
      }
      std::size_t v = parse_uint(t.substr(1), no);
      if (v >= c.num_qubits()) {
        throw ParseError("qubit index out of range", no);
      }
      q[i] = static_cast<Qubit>(v);
    }
    try {
      if (arity == 1) {
        c.append(Gate(kind, q[0]));
      } else if (arity == 2) {
        c.append(Gate(kind, q[0], q[1]));
      } else {
        c.append(Gate(kind, q[0], q[1], q[2]));
      }
    } catch (const InvalidInput &e) {
      throw ParseError(e.what(), no);
    }
  }
  return c;
}

}  // namespace csdsynth
