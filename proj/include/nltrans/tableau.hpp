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

#include "nltrans/problem.hpp"
#include "nltrans/tableau_types.hpp"

namespace nltrans {

/// Succeeds iff row sums match supplies, column sums match demands and no
/// entry is negative, all within the problem's feasibility tolerance.
void check_feasible(const Problem& problem, const Allocation& x);

/// True iff the basis has exactly m+n-1 cells whose bipartite row/column
/// graph is connected and acyclic. Throws OutOfRangeCell.
bool is_spanning_tree(int rows, int cols, const Basis& basis);

/// Solves derivative(i,j) == u[i] + v[j] on every basic cell by walking the
/// basis tree from row 0 with u[0] = 0. Each tree edge pins one new
/// potential as an exact one-rounding difference, so on every basic cell one
/// of the two associations (d - u) - v or (d - v) - u is exactly zero.
Duals compute_duals(const Problem& problem, const Allocation& x,
                    const Basis& basis);

/// The unique alternating cycle closed by a nonbasic cell: position 0 is
/// `entering`, position 1 shares its column, and signs alternate +,-,+,-
/// around the cycle (even positions receive +theta).
std::vector<Cell> find_loop(int rows, int cols, const Basis& basis,
                            Cell entering);

/// Largest step that keeps every -theta cell nonnegative, with the first
/// cell in loop order attaining the bound reported as `blocking`.
struct ThetaStep {
    double theta = 0.0;
    Cell blocking;
    int blocking_pos = -1;
};

ThetaStep max_theta(const Allocation& x, const std::vector<Cell>& loop);

/// Bound for the reversed orientation (entering cell decreases).
ThetaStep max_theta_decrease(const Allocation& x, const std::vector<Cell>& loop);

/// x with +theta applied at even loop positions and -theta at odd ones.
Allocation apply_theta(const Allocation& x, const std::vector<Cell>& loop,
                       double theta);

/// Reversed orientation: -theta at even positions, +theta at odd ones.
Allocation apply_theta_decrease(const Allocation& x,
                                const std::vector<Cell>& loop, double theta);

}  // namespace nltrans
