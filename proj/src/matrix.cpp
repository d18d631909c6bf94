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

#include "csdsynth/matrix.hpp"

#include <cmath>
#include <string>

namespace csdsynth {

unsigned qubits_of_dim(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidInput("dimension is not a power of two >= 2",
                       {{"dim", std::to_string(dim)}});
  }
  unsigned q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol)
    : m_(std::move(m)), tol_(tol), qubits_(0) {
  if (m_.rows() != m_.cols()) {
    throw DimensionMismatch("unitary must be square");
  }
  qubits_ = qubits_of_dim(static_cast<std::size_t>(m_.rows()));
  require_finite(m_, "unitary");
  double r = unitarity_residual(m_);
  if (r > tol_) throw NotUnitary("matrix is not unitary within tolerance", r);
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  return UnitaryMatrix(identity_matrix(dim));
}

void require_finite(const Matrix &m, const char *what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

SvdResult svd(const Matrix &m) {
  require_finite(m, "svd input");
  Eigen::BDCSVD<Matrix> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

double spectral_norm(const Matrix &m) {
  require_finite(m, "spectral_norm input");
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> s(m);
  return s.singularValues()(0);
}

double frobenius_norm(const Matrix &m) { return m.norm(); }

Matrix tensor(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix multiply(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply: inner dimensions differ",
                            {{"lhs_cols", std::to_string(a.cols())},
                             {"rhs_rows", std::to_string(b.rows())}});
  }
  return a * b;
}

Matrix dagger(const Matrix &a) { return a.adjoint(); }

Matrix identity_matrix(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
}

double unitarity_residual(const Matrix &m) {
  return (m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).norm();
}

Matrix haar_unitary(std::size_t dim, Rng &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(dim, dim);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      double re = g(rng);
      double im = g(rng);
      z(i, j) = cd(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    cd d = r(j, j);
    double a = std::abs(d);
    cd ph = a > 0 ? d / a : cd(1.0);
    q.col(j) *= ph;
  }
  return q;
}

Matrix haar_su2(Rng &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double q[4];
  double n = 0;
  do {
    n = 0;
    for (double &v : q) {
      v = g(rng);
      n += v * v;
    }
  } while (n < 1e-12);
  n = std::sqrt(n);
  for (double &v : q) v /= n;
  Matrix m(2, 2);
  m << cd(q[0], q[1]), cd(-q[2], q[3]), cd(q[2], q[3]), cd(q[0], -q[1]);
  return m;
}

Matrix gate_h() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

Matrix gate_t() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4);
  return m;
}

Matrix gate_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

}  // namespace csdsynth
