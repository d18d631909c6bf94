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

#include "csdsynth/circuit.hpp"

namespace csdsynth {

/**
 * Text format:
 *
 *     data <n_data>
 *     ancilla <n_ancilla>
 *     <kind> q<i> [q<j> [q<k>]]
 *
 * one gate per line, kinds in lower case. Blank lines and lines starting
 * with '#' are ignored by the parser.
 */
std::string serialize(const Circuit &c);
Circuit deserialize(const std::string &text);

}  // namespace csdsynth
