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

#include "csdsynth/csd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>

namespace csdsynth {

namespace {

using ColMatrix = Eigen::MatrixXcd;

constexpr double kReconstructionTol = 1e-9;

inline std::size_t bit_of(std::size_t index, unsigned n, unsigned q) {
  return (index >> (n - 1 - q)) & 1u;
}

}  // namespace

// ---------------------------------------------------------------------------
// CsdTriple

Matrix CsdTriple::middle() const {
  const std::size_t h = thetas.size();
  Matrix d = Matrix::Zero(2 * h, 2 * h);
  for (std::size_t j = 0; j < h; ++j) {
    double c = std::cos(thetas[j]);
    double s = std::sin(thetas[j]);
    d(j, j) = c;
    d(j, j + h) = s;
    d(j + h, j) = s;
    d(j + h, j + h) = -c;
  }
  return d;
}

Matrix CsdTriple::reconstruct() const {
  const Eigen::Index h = static_cast<Eigen::Index>(thetas.size());
  Matrix v = Matrix::Zero(2 * h, 2 * h);
  Matrix w = Matrix::Zero(2 * h, 2 * h);
  v.topLeftCorner(h, h) = V1;
  v.bottomRightCorner(h, h) = V2;
  w.topLeftCorner(h, h) = W1;
  w.bottomRightCorner(h, h) = W2;
  return v * middle() * w;
}

// ---------------------------------------------------------------------------
// MultiControlledUnitary

MultiControlledUnitary::MultiControlledUnitary(unsigned n,
                                               std::vector<unsigned> targets,
                                               std::vector<Matrix> table)
    : n_(n), targets_(std::move(targets)), table_(std::move(table)) {
  const std::size_t k = targets_.size();
  if (k == 0 || k > n_) throw InvalidInput("MCU needs 1..n targets");
  std::vector<unsigned> seen = targets_;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() ||
      seen.back() >= n_) {
    throw InvalidInput("MCU targets must be distinct qubits below n");
  }
  if (table_.size() != (std::size_t{1} << (n_ - k))) {
    throw DimensionMismatch("MCU table must have 2^(n-k) entries",
                            {{"entries", std::to_string(table_.size())}});
  }
  const Eigen::Index dim = Eigen::Index{1} << k;
  for (const Matrix &v : table_) {
    if (v.rows() != dim || v.cols() != dim) {
      throw DimensionMismatch("MCU table entry has the wrong dimension");
    }
  }
}

std::vector<unsigned> MultiControlledUnitary::controls() const {
  std::vector<unsigned> c;
  for (unsigned q = 0; q < n_; ++q) {
    if (std::find(targets_.begin(), targets_.end(), q) == targets_.end()) {
      c.push_back(q);
    }
  }
  return c;
}

cd MultiControlledUnitary::element(std::size_t row, std::size_t col) const {
  std::size_t xr = 0, xc = 0;
  for (unsigned q : controls()) {
    xr = (xr << 1) | bit_of(row, n_, q);
    xc = (xc << 1) | bit_of(col, n_, q);
  }
  if (xr != xc) return 0.0;
  std::size_t tr = 0, tc = 0;
  for (unsigned q : targets_) {
    tr = (tr << 1) | bit_of(row, n_, q);
    tc = (tc << 1) | bit_of(col, n_, q);
  }
  return table_[xr](static_cast<Eigen::Index>(tr),
                    static_cast<Eigen::Index>(tc));
}

Matrix MultiControlledUnitary::to_matrix() const {
  const std::size_t dim = std::size_t{1} << n_;
  const std::vector<unsigned> ctrl = controls();
  const std::size_t k = targets_.size();
  auto compose = [&](std::size_t x, std::size_t t) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ctrl.size(); ++i) {
      std::size_t b = (x >> (ctrl.size() - 1 - i)) & 1u;
      idx |= b << (n_ - 1 - ctrl[i]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t b = (t >> (k - 1 - i)) & 1u;
      idx |= b << (n_ - 1 - targets_[i]);
    }
    return static_cast<Eigen::Index>(idx);
  };
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  const std::size_t kd = std::size_t{1} << k;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    for (std::size_t r = 0; r < kd; ++r) {
      for (std::size_t c = 0; c < kd; ++c) {
        m(compose(x, r), compose(x, c)) =
            table_[x](static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(c));
      }
    }
  }
  return m;
}

Matrix MultiControlledUnitary::restrict_to_suffix(std::size_t prefix,
                                                  unsigned k) const {
  for (unsigned q : targets_) {
    if (q < n_ - k) throw InvalidInput("MCU target outside the suffix");
  }
  const std::size_t kd = std::size_t{1} << k;
  Matrix m(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          element(prefix * kd + r, prefix * kd + c);
    }
  }
  return m;
}

bool MultiControlledUnitary::is_identity(double tol) const {
  for (const Matrix &v : table_) {
    Matrix d = v - Matrix::Identity(v.rows(), v.cols());
    if (d.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Decompositions

unsigned rightmost_one(unsigned n, std::uint64_t i) {
  if (n == 0 || n > 63 || i == 0 || i >= (std::uint64_t{1} << n)) {
    throw InvalidInput("rightmost_one: i out of range",
                       {{"n", std::to_string(n)}, {"i", std::to_string(i)}});
  }
  return n - static_cast<unsigned>(std::countr_zero(i));
}

CsdTriple cs_decompose(const UnitaryMatrix &u) {
  const Matrix &m = u.matrix();
  if (m.rows() < 4) throw InvalidInput("cs_decompose needs n >= 2");
  const double residual = unitarity_residual(m);
  if (residual > kUnitarityTol) {
    throw NotUnitary("cs_decompose input is not unitary", residual);
  }
  const Eigen::Index h = m.rows() / 2;
  ColMatrix u11 = m.topLeftCorner(h, h);
  ColMatrix u12 = m.topRightCorner(h, h);
  ColMatrix u21 = m.bottomLeftCorner(h, h);
  ColMatrix u22 = m.bottomRightCorner(h, h);

  // U11 = V1 C W1. Singular values come out descending, so theta ascends.
  Eigen::BDCSVD<ColMatrix> s11(u11, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ColMatrix v1 = s11.matrixU();
  ColMatrix w1 = s11.matrixV().adjoint();
  Eigen::VectorXd c = s11.singularValues();

  // Y = U21 W1^dag = V2 S has orthogonal columns of norm sin(theta). QR with
  // the large columns first gives V2 and completes the near-null ones.
  ColMatrix y = u21 * w1.adjoint();
  ColMatrix yr(h, h);
  for (Eigen::Index p = 0; p < h; ++p) yr.col(p) = y.col(h - 1 - p);
  Eigen::HouseholderQR<ColMatrix> qr(yr);
  ColMatrix q = qr.householderQ() * ColMatrix::Identity(h, h);
  const ColMatrix &rr = qr.matrixQR();
  ColMatrix v2(h, h);
  Eigen::VectorXd s(h);
  for (Eigen::Index p = 0; p < h; ++p) {
    const Eigen::Index j = h - 1 - p;
    cd r = rr(p, p);
    double a = std::abs(r);
    v2.col(j) = a > 0 ? ColMatrix(q.col(p) * (r / a)) : ColMatrix(q.col(p));
    s(j) = a;
  }

  CsdTriple out;
  out.thetas.resize(static_cast<std::size_t>(h));
  for (Eigen::Index j = 0; j < h; ++j) {
    double cj = std::clamp(c(j), 0.0, 1.0);
    double t = std::atan2(s(j), cj);
    if (j > 0) t = std::max(t, out.thetas[static_cast<std::size_t>(j - 1)]);
    out.thetas[static_cast<std::size_t>(j)] = std::clamp(t, 0.0, M_PI / 2);
  }

  // Rows of W2 from whichever of U12 = V1 S W2 and U22 = -V2 C W2 is
  // better conditioned, then snapped to the nearest unitary.
  ColMatrix w2(h, h);
  for (Eigen::Index j = 0; j < h; ++j) {
    double t = out.thetas[static_cast<std::size_t>(j)];
    double cj = std::cos(t), sj = std::sin(t);
    if (sj >= cj) {
      w2.row(j) = (v1.col(j).adjoint() * u12) / sj;
    } else {
      w2.row(j) = -(v2.col(j).adjoint() * u22) / cj;
    }
  }
  Eigen::JacobiSVD<ColMatrix> sw(w2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  w2 = sw.matrixU() * sw.matrixV().adjoint();

  out.V1 = v1;
  out.V2 = v2;
  out.W1 = w1;
  out.W2 = w2;
  double res = frobenius_norm(out.reconstruct() - m);
  if (!(res <= kReconstructionTol)) {
    throw NumericalError("CS decomposition did not reconstruct its input",
                         {{"residual", std::to_string(res)},
                          {"dim", std::to_string(m.rows())}});
  }
  return out;
}

namespace {

MultiControlledUnitary lift(const MultiControlledUnitary &a,
                            const MultiControlledUnitary &b) {
  const unsigned n = a.num_qubits() + 1;
  const std::size_t half = a.table().size();
  std::vector<Matrix> table;
  table.reserve(2 * half);
  for (std::size_t y = 0; y < half; ++y) table.push_back(a.entry(y));
  for (std::size_t y = 0; y < half; ++y) table.push_back(b.entry(y));
  return MultiControlledUnitary(n, {a.target() + 1}, std::move(table));
}

}  // namespace

std::vector<MultiControlledUnitary> recursive_csd(const UnitaryMatrix &u) {
  const unsigned n = u.num_qubits();
  if (n == 1) return {MultiControlledUnitary(1, {0}, {u.matrix()})};
  CsdTriple t = cs_decompose(u);
  auto v1 = recursive_csd(UnitaryMatrix(t.V1));
  auto v2 = recursive_csd(UnitaryMatrix(t.V2));
  auto w1 = recursive_csd(UnitaryMatrix(t.W1));
  auto w2 = recursive_csd(UnitaryMatrix(t.W2));

  std::vector<MultiControlledUnitary> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::size_t i = 0; i < v1.size(); ++i) out.push_back(lift(v1[i], v2[i]));
  std::vector<Matrix> d;
  d.reserve(t.thetas.size());
  for (double th : t.thetas) {
    Matrix e(2, 2);
    e << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
    d.push_back(std::move(e));
  }
  out.emplace_back(n, std::vector<unsigned>{0}, std::move(d));
  for (std::size_t i = 0; i < w1.size(); ++i) out.push_back(lift(w1[i], w2[i]));
  return out;
}

BlockGrouping group_blocks(const std::vector<MultiControlledUnitary> &mcus,
                           unsigned k) {
  if (mcus.empty()) throw InvalidInput("group_blocks: no MCUs");
  const unsigned n = mcus.front().num_qubits();
  if (mcus.size() != (std::size_t{1} << n) - 1) {
    throw DimensionMismatch("group_blocks expects 2^n - 1 MCUs");
  }
  if (k < 1 || k >= n) {
    throw InvalidInput("group_blocks: k must be in [1, n-1]",
                       {{"k", std::to_string(k)}, {"n", std::to_string(n)}});
  }
  const std::size_t stride = std::size_t{1} << k;
  const std::size_t blocks = std::size_t{1} << (n - k);
  std::vector<unsigned> targets;
  for (unsigned q = n - k; q < n; ++q) targets.push_back(q);

  BlockGrouping g;
  for (std::size_t j = 0; j < blocks; ++j) {
    std::vector<Matrix> table;
    table.reserve(blocks);
    for (std::size_t x = 0; x < blocks; ++x) {
      Matrix v = Matrix::Identity(static_cast<Eigen::Index>(stride),
                                  static_cast<Eigen::Index>(stride));
      for (std::size_t i = j * stride + 1; i < (j + 1) * stride; ++i) {
        v = v * mcus[i - 1].restrict_to_suffix(x, k);
      }
      table.push_back(std::move(v));
    }
    g.W.emplace_back(n, targets, std::move(table));
    if (j > 0) g.U.push_back(mcus[j * stride - 1]);
  }
  return g;
}

Matrix product_of(const std::vector<MultiControlledUnitary> &mcus) {
  if (mcus.empty()) throw InvalidInput("product_of: empty list");
  Matrix p = mcus.front().to_matrix();
  for (std::size_t i = 1; i < mcus.size(); ++i) p = p * mcus[i].to_matrix();
  return p;
}

std::string mcus_to_json(const std::vector<MultiControlledUnitary> &mcus) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &u : mcus) {
    nlohmann::json e;
    e["n"] = u.num_qubits();
    e["targets"] = u.targets();
    nlohmann::json table = nlohmann::json::array();
    for (const Matrix &v : u.table()) {
      nlohmann::json re = nlohmann::json::array();
      nlohmann::json im = nlohmann::json::array();
      for (Eigen::Index r = 0; r < v.rows(); ++r) {
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
          re.push_back(v(r, c).real());
          im.push_back(v(r, c).imag());
        }
      }
      table.push_back({{"re", re}, {"im", im}});
    }
    e["table"] = std::move(table);
    arr.push_back(std::move(e));
  }
  return arr.dump(1) + "\n";
}

}  // namespace csdsynth
