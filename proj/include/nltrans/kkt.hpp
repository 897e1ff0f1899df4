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

#include "nltrans/problem.hpp"
#include "nltrans/tableau.hpp"

namespace nltrans {

inline constexpr double kDefaultKktTol = 1e-8;

/// First-order optimality certificate for a basic solution.
///
/// w holds the reduced derivatives d/dx f - u_i - v_j; cs holds the
/// complementary-slackness products x_ij * w_ij. The report is satisfied when
/// stationarity (basic cells), dual feasibility (all cells) and complementary
/// slackness (nonbasic cells) all hold at the cost-scaled tolerance
/// tol * max(1, total cost). For convex problems that certifies a global
/// minimum; for concave ones it is necessary only.
struct KktReport {
    Matrix w;
    Matrix cs;
    double max_stationarity_violation = 0.0;  // max |w| over basic cells
    double max_nonneg_violation = 0.0;        // max(0, -w) over all cells
    double max_cs_violation = 0.0;            // max |x*w| over nonbasic cells
    bool satisfied = false;
};

/// w_ij = derivative(i,j) - u_i - v_j for every cell.
Matrix reduced_derivatives(const Problem& problem, const Allocation& x,
                           const Duals& duals);

/// Builds duals from the basis, then scores the KKT conditions. Throws if x
/// is infeasible or the basis is not a spanning tree.
KktReport check_kkt(const Problem& problem, const Allocation& x,
                    const Basis& basis, double tol = kDefaultKktTol);

}  // namespace nltrans
