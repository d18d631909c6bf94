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

#include <cstdint>

#include "csdsynth/zomega.hpp"

namespace csdsynth {

/** Exact matrix of the word packed as in WordTable. */
ExactU2 exact_word_matrix(std::uint64_t bits, unsigned slots);

/** Quaternion of e^{-i j pi/8} W and the first column of W. */
void recompute_entry(const ExactU2 &m, double *qa, double *qb, double *qc,
                     double *qd, double *cr, double *ci, double *br,
                     double *bi);

}  // namespace csdsynth
