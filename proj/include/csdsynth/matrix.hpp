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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

#include "csdsynth/errors.hpp"

namespace csdsynth {

using cd = std::complex<double>;
using Matrix =
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<cd, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

constexpr double kUnitarityTol = 1e-10;

/**
 * Square unitary of dimension 2^q, checked at construction.
 *
 * The check is ||M^dag M - I||_F <= tol.
 */
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m, double tol = kUnitarityTol);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  unsigned num_qubits() const { return qubits_; }
  double unitarity_tol() const { return tol_; }
  const Matrix &matrix() const { return m_; }
  cd operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix m_;
  double tol_;
  unsigned qubits_;
};

struct SvdResult {
  Matrix U;
  RealVector sigma;  // descending
  Matrix V;          // M = U diag(sigma) V^dag
};

/** Throws InvalidInput on NaN or infinite entries. */
void require_finite(const Matrix &m, const char *what);

SvdResult svd(const Matrix &m);
double spectral_norm(const Matrix &m);
double frobenius_norm(const Matrix &m);

Matrix tensor(const Matrix &a, const Matrix &b);
Matrix multiply(const Matrix &a, const Matrix &b);
Matrix dagger(const Matrix &a);
Matrix identity_matrix(std::size_t dim);

/** ||M^dag M - I||_F. */
double unitarity_residual(const Matrix &m);

/** log2 of dim, or throws if dim is not a power of two (>= 2). */
unsigned qubits_of_dim(std::size_t dim);

/** Haar-random unitary via QR of a complex Ginibre matrix. */
Matrix haar_unitary(std::size_t dim, Rng &rng);

/** Haar-random element of SU(2). */
Matrix haar_su2(Rng &rng);

// Common single-qubit matrices.
Matrix gate_h();
Matrix gate_t();
Matrix gate_x();

}  // namespace csdsynth
