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
#include <utility>

#include "nltrans/problem.hpp"
#include "nltrans/tableau_types.hpp"

namespace nltrans {

enum class IbfsRule { NorthwestCorner, Vogel, RowMinima, LeastCost };

std::string to_string(IbfsRule rule);

/// Initial basic feasible solution for a validated, balanced problem. The
/// returned basis is always a spanning tree of exactly m+n-1 cells covering
/// every positive cell; nonlinear cells are ranked by their marginal cost at
/// zero. Deterministic for a fixed input and rule.
std::pair<Allocation, Basis> initial_solution(const Problem& problem,
                                              IbfsRule rule);

}  // namespace nltrans
