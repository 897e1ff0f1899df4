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

#include <vector>

#include "nltrans/solvers.hpp"

namespace nltrans::solver_detail {

Cell cell_of(std::ptrdiff_t flat, int cols);

/// Smallest-coordinate cell among the limiting positions that block at
/// theta; used instead of the first-in-loop rule while breaking degenerate
/// cycles.
Cell smallest_blocking(const Allocation& x, const std::vector<Cell>& loop,
                       double theta, std::size_t first_limiting);

Solution finish(const Problem& problem, Allocation x, Basis basis,
                SolveStatus status, int iterations,
                const SolverOptions& options);

}  // namespace nltrans::solver_detail
