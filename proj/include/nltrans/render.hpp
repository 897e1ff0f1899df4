// Copyright 2026-present the nltrans project
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

#include "nltrans/problem.hpp"
#include "nltrans/tableau_types.hpp"

namespace nltrans {

/// Fixed-width text tableau: one row per source, allocation and marginal
/// cost per cell, a '*' marker on basic cells (zero-valued ones included),
/// supply and demand margins. Byte-deterministic for fixed input.
std::string render_tableau(const Problem& problem, const Allocation& x,
                           const Basis& basis);

}  // namespace nltrans
