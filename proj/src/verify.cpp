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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "csdsynth/simulate.hpp"

namespace csdsynth {

namespace {

constexpr unsigned kAutoDenseLimit = 20;
constexpr unsigned kMaxDataQubits = 12;

RestrictedMatrix restricted_dense(const Circuit &c) {
  const unsigned nq = static_cast<unsigned>(c.num_qubits());
  const unsigned nd = static_cast<unsigned>(c.n_data());
  const unsigned m = nq - nd;
  if (nq > kDenseQubitCap) {
    throw QubitBudgetExceeded("circuit exceeds the dense simulation cap", nq,
                              kDenseQubitCap);
  }
  const std::size_t dim = std::size_t{1} << nd;
  const std::size_t anc = std::size_t{1} << m;
  RestrictedMatrix r;
  r.matrix = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  r.leak_gram = Matrix::Zero(static_cast<Eigen::Index>(dim),
                             static_cast<Eigen::Index>(dim));
  std::vector<std::vector<cd>> finals;
  finals.reserve(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    StateVector s(nq, x * anc);
    s.apply(c);
    finals.push_back(std::move(s.amplitudes()));
  }
  for (std::size_t x = 0; x < dim; ++x) {
    const auto &fx = finals[x];
    for (std::size_t y = 0; y < dim; ++y) {
      r.matrix(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) =
          fx[y * anc];
    }
    for (std::size_t z = x; z < dim; ++z) {
      const auto &fz = finals[z];
      cd g = 0.0;
      for (std::size_t i = 0; i < fx.size(); ++i) {
        if (i % anc == 0) continue;
        g += std::conj(fx[i]) * fz[i];
      }
      r.leak_gram(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(z)) =
          g;
      r.leak_gram(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(x)) =
          std::conj(g);
    }
  }
  return r;
}

RestrictedMatrix restricted_sparse(const Circuit &c) {
  const std::size_t nq = c.num_qubits();
  const std::size_t nd = c.n_data();
  const std::size_t dim = std::size_t{1} << nd;
  RestrictedMatrix r;
  r.matrix = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  r.leak_gram = Matrix::Zero(static_cast<Eigen::Index>(dim),
                             static_cast<Eigen::Index>(dim));
  struct Leak {
    std::vector<std::uint64_t> key;
    std::size_t x;
    cd amp;
  };
  std::vector<Leak> leaks;
  for (std::size_t x = 0; x < dim; ++x) {
    std::vector<bool> basis(nq, false);
    for (std::size_t q = 0; q < nd; ++q) basis[q] = (x >> (nd - 1 - q)) & 1u;
    SparseState s(nq, basis);
    s.apply(c);
    for (std::size_t e = 0; e < s.size(); ++e) {
      bool clean = true;
      for (std::size_t q = nd; q < nq && clean; ++q) clean = !s.bit(e, q);
      if (clean) {
        std::size_t y = 0;
        for (std::size_t q = 0; q < nd; ++q) y = (y << 1) | s.bit(e, q);
        r.matrix(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) +=
            s.amplitude(e);
      } else {
        leaks.push_back({std::vector<std::uint64_t>(
                             s.key(e), s.key(e) + s.key_words()),
                         x, s.amplitude(e)});
      }
    }
  }
  std::sort(leaks.begin(), leaks.end(), [](const Leak &a, const Leak &b) {
    return a.key != b.key ? a.key < b.key : a.x < b.x;
  });
  for (std::size_t i = 0; i < leaks.size();) {
    std::size_t j = i;
    while (j < leaks.size() && leaks[j].key == leaks[i].key) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = i; b < j; ++b) {
        r.leak_gram(static_cast<Eigen::Index>(leaks[a].x),
                    static_cast<Eigen::Index>(leaks[b].x)) +=
            std::conj(leaks[a].amp) * leaks[b].amp;
      }
    }
    i = j;
  }
  return r;
}

// Minimises f over the circle: the trace-derived start, a 64-point grid,
// then golden-section refinement around the best grid point.
double minimise_phase(const std::function<double(double)> &f, double start,
                      double *arg) {
  double best_phi = start;
  double best = f(start);
  constexpr int kGrid = 64;
  const double step = 2 * M_PI / kGrid;
  double grid_phi = 0, grid_best = INFINITY;
  for (int i = 0; i < kGrid; ++i) {
    double phi = i * step;
    double v = f(phi);
    if (v < grid_best) {
      grid_best = v;
      grid_phi = phi;
    }
  }
  for (double centre : {grid_phi, start}) {
    double lo = centre - step, hi = centre + step;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 80; ++it) {
      if (fa < fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - g * (hi - lo);
        fa = f(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + g * (hi - lo);
        fb = f(b);
      }
    }
    for (auto [phi, v] : {std::pair{a, fa}, std::pair{b, fb}}) {
      if (v < best) {
        best = v;
        best_phi = phi;
      }
    }
  }
  if (grid_best < best) {
    best = grid_best;
    best_phi = grid_phi;
  }
  if (arg) *arg = std::remainder(best_phi, 2 * M_PI);
  return best;
}

double trace_phase(const Matrix &a, const Matrix &b) {
  cd tr = (a.adjoint() * b).trace();
  return std::abs(tr) > 1e-12 ? -std::arg(tr) : 0.0;
}

}  // namespace

RestrictedMatrix restricted_matrix(const Circuit &c, SimMethod method) {
  if (c.n_data() > kMaxDataQubits) {
    throw QubitBudgetExceeded("too many data qubits to tabulate", c.n_data(),
                              kMaxDataQubits);
  }
  if (method == SimMethod::Auto) {
    method = c.num_qubits() <= kAutoDenseLimit ? SimMethod::Dense
                                                : SimMethod::Sparse;
  }
  RestrictedMatrix r = method == SimMethod::Dense ? restricted_dense(c)
                                                  : restricted_sparse(c);
  for (Eigen::Index x = 0; x < r.leak_gram.rows(); ++x) {
    r.leakage = std::max(r.leakage, std::sqrt(std::max(0.0, r.leak_gram(x, x).real())));
  }
  return r;
}

double phase_invariant_distance(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("phase_invariant_distance: shapes differ");
  }
  auto f = [&](double phi) {
    return spectral_norm(a - std::polar(1.0, phi) * b);
  };
  return minimise_phase(f, trace_phase(a, b), nullptr);
}

VerificationResult verify(const RestrictedMatrix &r,
                          const UnitaryMatrix &u_ref, double budget) {
  const Matrix &u = u_ref.matrix();
  if (u.rows() != r.matrix.rows()) {
    throw DimensionMismatch("reference and circuit act on different sizes",
                            {{"reference_dim", std::to_string(u.rows())},
                             {"circuit_dim", std::to_string(r.matrix.rows())}});
  }
  // ||[U - e^{i phi} M; e^{i phi} L]||^2 = lambda_max(D^dag D + L^dag L).
  auto iso = [&](double phi) {
    Eigen::MatrixXcd d = u - std::polar(1.0, phi) * r.matrix;
    Eigen::MatrixXcd h = d.adjoint() * d + Eigen::MatrixXcd(r.leak_gram);
    h = (h + h.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                       Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  };
  VerificationResult v;
  const double start = trace_phase(u, r.matrix);
  v.distance = minimise_phase(iso, start, &v.phase);
  v.phase_sensitive_distance = iso(0.0);
  v.restricted_distance = phase_invariant_distance(u, r.matrix);
  v.ancilla_leakage = r.leakage;
  v.passed = v.distance <= budget;
  return v;
}

VerificationResult verify(const Circuit &c, const UnitaryMatrix &u_ref,
                          double budget, SimMethod method) {
  if (c.n_data() != u_ref.num_qubits()) {
    throw DimensionMismatch("circuit data width differs from the reference",
                            {{"n_data", std::to_string(c.n_data())},
                             {"reference_qubits",
                              std::to_string(u_ref.num_qubits())}});
  }
  return verify(restricted_matrix(c, method), u_ref, budget);
}

}  // namespace csdsynth
