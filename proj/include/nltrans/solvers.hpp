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

#include "nltrans/ibfs.hpp"
#include "nltrans/kkt.hpp"
#include "nltrans/problem.hpp"
#include "nltrans/tableau.hpp"

namespace nltrans {

struct SolverOptions {
    double tol = kDefaultKktTol;       // KKT tolerance
    int max_iterations = 10000;
    IbfsRule ibfs_rule = IbfsRule::NorthwestCorner;
    double line_search_tol = 1e-10;    // final lambda interval width
    bool trace = false;
};

enum class SolveStatus { Optimal, KktPoint, IterationLimit };

std::string to_string(SolveStatus s);

struct Solution {
    Allocation x;
    Basis basis{0, 0, {}};
    double objective = 0.0;
    KktReport kkt;
    SolveStatus status = SolveStatus::KktPoint;
    int iterations = 0;
};

/// One solver move. `lambda` is the line-search weight on the current point:
/// 1 keeps it, 0 accepts the full pivot point; it is NaN for solvers without
/// a line search, as `case_tag` is zero outside the convex simplex.
struct TraceRecord {
    int iteration = 0;
    Cell entering;
    int case_tag = 0;
    double theta = 0.0;
    double lambda = 0.0;
    double objective_before = 0.0;
    double objective_after = 0.0;
    bool basis_changed = false;
};

using Trace = std::vector<TraceRecord>;

struct SolveResult {
    Solution solution;
    Trace trace;
};

/// Dispatches on the problem's cost class: linear -> transportation simplex,
/// convex -> transportation convex simplex, concave -> extreme-point descent.
/// Mixed grids run the convex-simplex machinery but report at most KktPoint.
SolveResult solve(const Problem& problem, const SolverOptions& options = {});

/// Classic transportation simplex (constant marginal costs).
SolveResult solve_linear(const Problem& problem, const SolverOptions& options = {});
SolveResult solve_linear(const Problem& problem, Allocation x0, Basis basis0,
                         const SolverOptions& options);

/// Extreme-point descent for concave costs: tries improving pivots in order
/// of most negative reduced derivative and accepts the first one that
/// strictly lowers the objective. Every iterate is a vertex.
SolveResult solve_concave(const Problem& problem, const SolverOptions& options = {});
SolveResult solve_concave(const Problem& problem, Allocation x0, Basis basis0,
                          const SolverOptions& options);

/// Transportation convex simplex: picks the worst reduced derivative (for an
/// increase) or the worst complementary-slackness product (for a decrease),
/// forms the full pivot point and line-searches the segment.
SolveResult solve_convex(const Problem& problem, const SolverOptions& options = {});
SolveResult solve_convex(const Problem& problem, Allocation x0, Basis basis0,
                         const SolverOptions& options);

struct LineSearchResult {
    double lambda = 0.0;   // weight on x_k: x_next = lambda*x_k + (1-lambda)*y_k
    Allocation x;
    double objective = 0.0;
};

/// Minimizes f(lambda*x_k + (1-lambda)*y_k) over [0,1] by golden-section
/// search to the given interval width. The result never exceeds either
/// endpoint value; endpoint ties resolve toward lambda = 0 (the full step).
LineSearchResult line_search(const Problem& problem, const Allocation& x_k,
                             const Allocation& y_k, double tol = 1e-10);

}  // namespace nltrans
