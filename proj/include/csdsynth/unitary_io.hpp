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

#include <string>

#include "csdsynth/matrix.hpp"

namespace csdsynth {

// JSON: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
// Binary: "UNI1", u32 dim (LE), then dim*dim (re, im) float64 pairs.

Matrix parse_unitary_json(const std::string &text);
std::string unitary_to_json(const Matrix &m);

Matrix parse_unitary_binary(const std::string &bytes);
std::string unitary_to_binary(const Matrix &m);

/** Reads either format, chosen by the leading magic bytes. */
UnitaryMatrix read_unitary_file(const std::string &path,
                                double tol = kUnitarityTol);

/** Reads a whole file; throws InvalidInput when it cannot be opened. */
std::string read_file(const std::string &path);

/** Writes via a temporary file and rename. */
void write_file_atomic(const std::string &path, const std::string &data);

}  // namespace csdsynth
