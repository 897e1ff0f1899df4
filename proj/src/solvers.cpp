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

#include "nltrans/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nltrans/errors.hpp"
#include "nltrans/kernels.hpp"
#include "nltrans/solver_detail.hpp"

namespace nltrans {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal:        return "optimal";
        case SolveStatus::KktPoint:       return "kkt_point";
        case SolveStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

namespace solver_detail {

Cell cell_of(std::ptrdiff_t flat, int cols) {
    const int c = static_cast<int>(flat % cols);
    const int r = static_cast<int>(flat / cols);
    return {r, c};
}

Cell smallest_blocking(const Allocation& x, const std::vector<Cell>& loop,
                       double theta, std::size_t first_limiting) {
    Cell best{-1, -1};
    for (std::size_t k = first_limiting; k < loop.size(); k += 2) {
        if (x.at(loop[k]) <= theta && (best.row < 0 || loop[k] < best)) {
            best = loop[k];
        }
    }
    return best;
}

Solution finish(const Problem& problem, Allocation x, Basis basis,
                SolveStatus status, int iterations,
                const SolverOptions& options) {
    Solution out;
    out.objective = total_cost(problem, x);
    out.kkt = check_kkt(problem, x, basis, options.tol);
    out.x = std::move(x);
    out.basis = std::move(basis);
    out.status = status;
    out.iterations = iterations;
    return out;
}

}  // namespace solver_detail

using solver_detail::cell_of;
using solver_detail::finish;
using solver_detail::smallest_blocking;

SolveResult solve_linear(const Problem& problem, const SolverOptions& options) {
    auto [x0, basis0] = initial_solution(problem, options.ibfs_rule);
    return solve_linear(problem, std::move(x0), std::move(basis0), options);
}

SolveResult solve_linear(const Problem& problem, Allocation x, Basis basis,
                         const SolverOptions& options) {
    check_feasible(problem, x);
    if (!is_spanning_tree(problem.rows(), problem.cols(), basis)) {
        throw NotATree("initial basis is not a spanning tree");
    }
    const auto& kern = kernels::active_backend();
    const int m = problem.rows();
    const int n = problem.cols();
    // A forced run on a nonlinear grid still works with the marginal costs
    // at the current point, but the stop no longer certifies optimality.
    const bool certifiable = classify(problem) == CostClass::Linear;

    SolveResult result;
    double objective = total_cost(problem, x);
    int iterations = 0;
    int stalled = 0;
    const int bland_after = m + n;
    const int stall_limit = m * n + 2 * (m + n);
    SolveStatus status = SolveStatus::IterationLimit;

    for (int pass = 0; pass < options.max_iterations; ++pass) {
        const Duals duals = compute_duals(problem, x, basis);
        const Matrix w = reduced_derivatives(problem, x, duals);
        const auto& nonbasic = basis.nonbasic_mask();
        const double tol = options.tol * std::max(1.0, objective);

        Cell entering;
        bool found = false;
        if (stalled < bland_after) {
            const kernels::ArgValue pick =
                kern.masked_min(w.data(), nonbasic.data(), w.size());
            if (pick.index >= 0 && pick.value < -tol) {
                entering = cell_of(pick.index, n);
                found = true;
            }
        } else {
            // Degenerate stretch: fall back to a first-eligible rule to break
            // potential cycles.
            for (std::size_t k = 0; k < w.size() && !found; ++k) {
                if (nonbasic[k] && w.data()[k] < -tol) {
                    entering = cell_of(static_cast<std::ptrdiff_t>(k), n);
                    found = true;
                }
            }
        }
        if (!found) {
            status = certifiable ? SolveStatus::Optimal : SolveStatus::KktPoint;
            break;
        }

        const std::vector<Cell> loop = find_loop(m, n, basis, entering);
        const ThetaStep step = max_theta(x, loop);
        Cell leaving = step.blocking;
        if (stalled >= bland_after) {
            leaving = smallest_blocking(x, loop, step.theta, 1);
        }
        Allocation next = apply_theta(x, loop, step.theta);
        basis.swap(leaving, entering);
        const double next_objective = total_cost(problem, next);

        if (options.trace) {
            result.trace.push_back({iterations, entering, 0, step.theta,
                                    std::numeric_limits<double>::quiet_NaN(),
                                    objective, next_objective, true});
        }
        const bool moved = step.theta > 0.0;
        x = std::move(next);
        objective = next_objective;
        ++iterations;
        stalled = moved ? 0 : stalled + 1;
        if (stalled >= stall_limit) {
            status = SolveStatus::KktPoint;
            break;
        }
    }

    result.solution = finish(problem, std::move(x), std::move(basis), status,
                             iterations, options);
    return result;
}

SolveResult solve_concave(const Problem& problem, const SolverOptions& options) {
    auto [x0, basis0] = initial_solution(problem, options.ibfs_rule);
    return solve_concave(problem, std::move(x0), std::move(basis0), options);
}

SolveResult solve_concave(const Problem& problem, Allocation x, Basis basis,
                          const SolverOptions& options) {
    check_feasible(problem, x);
    if (!is_spanning_tree(problem.rows(), problem.cols(), basis)) {
        throw NotATree("initial basis is not a spanning tree");
    }
    const int m = problem.rows();
    const int n = problem.cols();

    SolveResult result;
    double objective = total_cost(problem, x);
    int iterations = 0;
    SolveStatus status = SolveStatus::IterationLimit;

    struct Candidate {
        double w = 0.0;
        Cell cell;
        bool operator<(const Candidate& o) const {
            return w != o.w ? w < o.w : cell < o.cell;
        }
    };
    std::vector<Candidate> candidates;

    for (int pass = 0; pass < options.max_iterations; ++pass) {
        const Duals duals = compute_duals(problem, x, basis);
        const Matrix w = reduced_derivatives(problem, x, duals);
        const auto& nonbasic = basis.nonbasic_mask();
        const double scale = std::max(1.0, objective);

        candidates.clear();
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (nonbasic[k] && w.data()[k] < -options.tol * scale) {
                candidates.push_back({w.data()[k], cell_of(static_cast<std::ptrdiff_t>(k), n)});
            }
        }
        std::sort(candidates.begin(), candidates.end());

        bool improved = false;
        for (const Candidate& cand : candidates) {
            const std::vector<Cell> loop = find_loop(m, n, basis, cand.cell);
            const ThetaStep step = max_theta(x, loop);
            if (step.theta <= 0.0) continue;
            Allocation next = apply_theta(x, loop, step.theta);
            const double next_objective = total_cost(problem, next);
            if (next_objective < objective - options.tol * scale) {
                basis.swap(step.blocking, cand.cell);
                if (options.trace) {
                    result.trace.push_back(
                        {iterations, cand.cell, 0, step.theta,
                         std::numeric_limits<double>::quiet_NaN(), objective,
                         next_objective, true});
                }
                x = std::move(next);
                objective = next_objective;
                ++iterations;
                improved = true;
                break;
            }
        }
        if (!improved) {
            status = SolveStatus::KktPoint;
            break;
        }
    }

    result.solution = finish(problem, std::move(x), std::move(basis), status,
                             iterations, options);
    return result;
}

SolveResult solve(const Problem& problem, const SolverOptions& options) {
    validate(problem);
    switch (classify(problem)) {
        case CostClass::Linear:  return solve_linear(problem, options);
        case CostClass::Convex:  return solve_convex(problem, options);
        case CostClass::Concave: return solve_concave(problem, options);
        case CostClass::Mixed:   return solve_convex(problem, options);
    }
    return solve_convex(problem, options);
}

}  // namespace nltrans
