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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csdsynth {

/**
 * Base class of every error thrown by the library.
 *
 * `code()` is a stable machine-readable identifier; `context()` carries
 * key/value details that the CLI copies into its error JSON.
 */
class Error : public std::runtime_error {
 public:
  using Context = std::vector<std::pair<std::string, std::string>>;

  Error(std::string code, const std::string &message, Context context = {})
      : std::runtime_error(message),
        code_(std::move(code)),
        context_(std::move(context)) {}

  const std::string &code() const { return code_; }
  const Context &context() const { return context_; }

 private:
  std::string code_;
  Context context_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string &msg, Context ctx = {})
      : Error("invalid_input", msg, std::move(ctx)) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string &msg, Context ctx = {})
      : Error("dimension_mismatch", msg, std::move(ctx)) {}
};

class NotUnitary : public Error {
 public:
  NotUnitary(const std::string &msg, double residual)
      : Error("not_unitary", msg, {{"residual", std::to_string(residual)}}),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &msg, Context ctx = {})
      : Error("numerical_error", msg, std::move(ctx)) {}
};

/** Requested precision is below what the word table can reach. */
class UnreachablePrecision : public Error {
 public:
  UnreachablePrecision(const std::string &msg, double requested,
                       double achievable)
      : Error("unreachable_precision", msg,
              {{"requested_eps", std::to_string(requested)},
               {"min_achievable_eps", std::to_string(achievable)}}),
        requested_(requested),
        achievable_(achievable) {}
  double requested() const { return requested_; }
  double achievable() const { return achievable_; }

 private:
  double requested_;
  double achievable_;
};

class QubitBudgetExceeded : public Error {
 public:
  QubitBudgetExceeded(const std::string &msg, std::size_t required,
                      std::size_t available)
      : Error("qubit_budget_exceeded", msg,
              {{"required", std::to_string(required)},
               {"available", std::to_string(available)}}),
        required_(required),
        available_(available) {}
  std::size_t required() const { return required_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string &msg, Context ctx = {})
      : Error("resource_limit", msg, std::move(ctx)) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string &msg, std::size_t line)
      : Error("parse_error", msg, {{"line", std::to_string(line)}}),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace csdsynth
