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

#include "csdsynth/unitary_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

namespace csdsynth {

namespace {

constexpr char kMagic[4] = {'U', 'N', 'I', '1'};

template <typename T>
void put_le(std::string &out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(reinterpret_cast<const char *>(b), sizeof(T));
}

template <typename T>
T get_le(const std::string &in, std::size_t off) {
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  return v;
}

}  // namespace

Matrix parse_unitary_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("unitary JSON: ") + e.what(), 0);
  }
  try {
    std::size_t dim = j.at("dim").get<std::size_t>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (re.size() != dim || im.size() != dim) {
      throw InvalidInput("unitary JSON: row count differs from dim");
    }
    Matrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (re[r].size() != dim || im[r].size() != dim) {
        throw InvalidInput("unitary JSON: column count differs from dim",
                           {{"row", std::to_string(r)}});
      }
      for (std::size_t c = 0; c < dim; ++c) {
        m(r, c) = cd(re[r][c].get<double>(), im[r][c].get<double>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput(std::string("unitary JSON: ") + e.what());
  }
}

std::string unitary_to_json(const Matrix &m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  nlohmann::json j;
  j["dim"] = m.rows();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump() + "\n";
}

Matrix parse_unitary_binary(const std::string &bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("unitary binary: bad magic", 0);
  }
  std::uint32_t dim = get_le<std::uint32_t>(bytes, 4);
  std::size_t need = 8 + std::size_t{dim} * dim * 16;
  if (dim == 0 || bytes.size() != need) {
    throw ParseError("unitary binary: size does not match header", 0);
  }
  Matrix m(dim, dim);
  std::size_t off = 8;
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      double re = get_le<double>(bytes, off);
      double im = get_le<double>(bytes, off + 8);
      m(r, c) = cd(re, im);
      off += 16;
    }
  }
  return m;
}

std::string unitary_to_binary(const Matrix &m) {
  std::string out(kMagic, 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      put_le<double>(out, m(r, c).real());
      put_le<double>(out, m(r, c).imag());
    }
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file", {{"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

UnitaryMatrix read_unitary_file(const std::string &path, double tol) {
  std::string data = read_file(path);
  Matrix m = (data.size() >= 4 && std::memcmp(data.data(), kMagic, 4) == 0)
                 ? parse_unitary_binary(data)
                 : parse_unitary_json(data);
  return UnitaryMatrix(std::move(m), tol);
}

void write_file_atomic(const std::string &path, const std::string &data) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write file", {{"path", tmp}});
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw InvalidInput("write failed", {{"path", tmp}});
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw InvalidInput("rename failed: " + ec.message(), {{"path", path}});
  }
}

}  // namespace csdsynth
