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

// Brute-force references. These exist to check the solvers, so they stay
// deliberately simple: vertex enumeration walks every spanning tree of the
// complete bipartite tableau graph, and the convex reference is plain
// Frank-Wolfe with an exact line search.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nltrans/ibfs.hpp"
#include "nltrans/problem.hpp"
#include "nltrans/tableau_types.hpp"

namespace nltrans {

inline constexpr std::uint64_t kDefaultTreeCap = 100000;

struct VertexEntry {
    std::vector<Cell> basis_cells;
    Allocation x;
    double objective = 0.0;
};

/// Every feasible basic solution, one per spanning tree, in deterministic
/// enumeration order (trees generated by including/excluding cells in
/// ascending (row, col) order).
struct VertexCatalog {
    std::uint64_t tree_count = 0;     // m^(n-1) * n^(m-1), the K_{m,n} formula
    std::uint64_t trees_visited = 0;  // trees actually enumerated
    std::vector<VertexEntry> entries; // feasible vertices only
};

/// Throws TooLarge when the spanning-tree count of K_{m,n} exceeds the cap.
/// Tree solutions with any basic value below -1e-9 are discarded; small
/// negative survivors are clamped to zero.
VertexCatalog enumerate_vertices(const Problem& problem,
                                 std::uint64_t cap = kDefaultTreeCap);

/// Minimum-objective catalog entry (first in enumeration order on ties).
/// Ground truth for linear and concave problems, whose optima sit at
/// extreme points.
std::pair<Allocation, double> global_min_vertex(const Problem& problem,
                                                std::uint64_t cap = kDefaultTreeCap);

/// Frank-Wolfe reference minimum for linear/convex problems: linearize at the
/// current point, solve the linear transportation problem, line-search the
/// segment, repeat until the duality gap drops below tol * max(1, |f|).
/// Throws NotConvex for concave or mixed grids.
double convex_reference(const Problem& problem, double tol,
                        IbfsRule start = IbfsRule::NorthwestCorner);

}  // namespace nltrans
