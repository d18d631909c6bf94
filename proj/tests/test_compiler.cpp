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

#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "csdsynth/circuit_io.hpp"
#include "csdsynth/compiler.hpp"
#include "csdsynth/simulate.hpp"

using namespace csdsynth;

namespace {

const WordSearcher &searcher16() {
  static const WordTable t = load_or_build_word_table(16);
  static const WordSearcher s(t);
  return s;
}

}  // namespace

TEST_CASE("choose_k") {
  CHECK(choose_k(12, 0.5) == 2);
  for (double eps : {1e-3, 0.1, 0.5}) CHECK(choose_k(2, eps) == 1);
  // L = 3 + log2(1/eps) >= 8 for eps <= 1/32.
  CHECK(choose_k(3, 1.0 / 32) == 1);
  for (unsigned n = 2; n <= 40; ++n) {
    const unsigned k = choose_k(n, 0.1);
    CHECK(k >= 1);
    CHECK(k <= n - 1);
  }
  CHECK(length_parameter(12, 0.5) == doctest::Approx(13.0));
  CHECK_THROWS(choose_k(1, 0.1));
  CHECK_THROWS(choose_k(4, 0.0));
}

TEST_CASE("error budget") {
  CHECK(error_budget(3, 1, 0.2) == doctest::Approx(0.025));
  for (unsigned n = 2; n <= 12; ++n) {
    CHECK(error_budget(n, n - 1, 0.3) == doctest::Approx(0.075));
    for (unsigned k = 1; k < n; ++k) {
      const double total = piece_count(n, k) * error_budget(n, k, 0.1);
      CHECK(total <= 0.1);
    }
  }
}

TEST_CASE("cost models") {
  for (unsigned n = 6; n <= 30; ++n) {
    for (unsigned k = 1; k < n; ++k) {
      PredictedCosts p = predict_costs(n, k, 0.1);
      const double l = length_parameter(n, 0.1);
      CHECK(p.t_model == doctest::Approx(std::exp2(n - k) * p.ancilla_model));
      CHECK(p.t_leading * p.ancilla_leading ==
            doctest::Approx(std::exp2(2.0 * n) * l).epsilon(1e-12));
      // When the select-swap term dominates, T is near its leading term.
      if (std::exp2((n + k) / 2.0) * std::sqrt(l) >= std::exp2(2.0 * k) * l)
        CHECK(p.t_model <= 2 * p.t_leading);
    }
  }
  PredictedCosts nv = predict_naive_costs(10, 0.1);
  CHECK(nv.t_model == doctest::Approx(1024 * nv.ancilla_model));
}

TEST_CASE("compile identity") {
  CompileConfig cfg;
  cfg.eps = 0.2;
  CompileResult r = compile(UnitaryMatrix::identity(4), cfg, searcher16());
  VerificationResult v = verify(r.circuit, UnitaryMatrix::identity(4), 0.2);
  CHECK(v.distance < 1e-9);
  CHECK(r.k == 1);
  CHECK(r.report.stages.size() == 3);
}

TEST_CASE("compile n=2 Haar at eps 0.2") {
  Rng rng(2);
  UnitaryMatrix u(haar_unitary(4, rng));
  CompileConfig cfg;
  cfg.eps = 0.2;
  CompileResult r = compile(u, cfg, searcher16());
  CHECK(r.error_bound <= 0.2);
  CHECK(r.delta == doctest::Approx(error_budget(2, 1, 0.2)));
  VerificationResult v = verify(r.circuit, u, 0.2);
  CHECK(v.passed);
  CHECK(v.distance <= r.error_bound + 1e-9);
  CHECK(r.report.t_count == t_count(r.circuit));
  std::uint64_t stage_t = 0;
  for (const StageCost &s : r.report.stages) stage_t += s.t;
  CHECK(stage_t == r.report.t_count);
  CHECK(r.report.stages.front().name == "W0");
  CHECK(r.report.stages[1].name == "U2");

  nlohmann::json j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["t_count"] == r.report.t_count);
  CHECK(j["k"] == 1);
  CHECK(j["strategy"] == "grouped");
  CHECK(j["stages"].size() == 3);
}

TEST_CASE("compile is deterministic") {
  Rng rng(3);
  UnitaryMatrix u(haar_unitary(4, rng));
  CompileConfig cfg;
  cfg.eps = 0.3;
  CompileResult a = compile(u, cfg, searcher16());
  CompileResult b = compile(u, cfg, searcher16());
  CHECK(serialize(a.circuit) == serialize(b.circuit));
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("compile argument checks") {
  CompileConfig cfg;
  cfg.k = 2;
  CHECK_THROWS_AS(compile(UnitaryMatrix::identity(4), cfg, searcher16()),
                  InvalidInput);
  cfg.k.reset();
  cfg.eps = -1;
  CHECK_THROWS_AS(compile(UnitaryMatrix::identity(4), cfg, searcher16()),
                  InvalidInput);
  cfg.eps = 0.1;
  CHECK_THROWS_AS(compile(UnitaryMatrix::identity(2), cfg, searcher16()),
                  InvalidInput);
}

TEST_CASE("unreachable precision names the achievable error") {
  Rng rng(4);
  UnitaryMatrix u(haar_unitary(4, rng));
  CompileConfig cfg;
  cfg.eps = 1e-6;
  try {
    compile(u, cfg, searcher16());
    FAIL("expected UnreachablePrecision");
  } catch (const UnreachablePrecision &e) {
    CHECK(e.requested() == 1e-6);
    CHECK(e.achievable() > 1e-6);
  }
}

TEST_CASE("naive strategy") {
  Rng rng(5);
  UnitaryMatrix u(haar_unitary(4, rng));
  CompileConfig cfg;
  cfg.eps = 0.3;
  cfg.strategy = Strategy::Naive;
  CompileResult r = compile(u, cfg, searcher16());
  CHECK(r.k == 0);
  CHECK(r.delta == doctest::Approx(0.3 / 4));
  CHECK(r.report.stages.size() == 3);
  CHECK(verify(r.circuit, u, 0.3).passed);
}
