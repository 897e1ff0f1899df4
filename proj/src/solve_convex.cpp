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

// Transportation convex simplex. Unlike the purely vertex-hopping linear
// simplex, a nonbasic variable may sit at a positive value after a partial
// line-search step, so each iteration weighs two kinds of moves:
//   increase the nonbasic cell with the most negative reduced derivative, or
//   decrease the nonbasic cell with the largest x*w product.
// The full pivot point y is then tempered by an exact line search between
// the current point (lambda=1) and y (lambda=0); the basis changes only on a
// full step that drives a basic variable to zero.

#include <algorithm>
#include <cmath>
#include <cstring>

#include "nltrans/errors.hpp"
#include "nltrans/kernels.hpp"
#include "nltrans/solver_detail.hpp"
#include "nltrans/solvers.hpp"

namespace nltrans {

using solver_detail::cell_of;
using solver_detail::finish;
using solver_detail::smallest_blocking;

namespace {

bool bitwise_equal(const Allocation& a, const Allocation& b) {
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool nearly_equal(const Allocation& a, const Allocation& b, double tol) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a.data()[k] - b.data()[k]) > tol) return false;
    }
    return true;
}

}  // namespace

SolveResult solve_convex(const Problem& problem, const SolverOptions& options) {
    auto [x0, basis0] = initial_solution(problem, options.ibfs_rule);
    return solve_convex(problem, std::move(x0), std::move(basis0), options);
}

SolveResult solve_convex(const Problem& problem, Allocation x, Basis basis,
                         const SolverOptions& options) {
    check_feasible(problem, x);
    if (!is_spanning_tree(problem.rows(), problem.cols(), basis)) {
        throw NotATree("initial basis is not a spanning tree");
    }
    const auto& kern = kernels::active_backend();
    const int m = problem.rows();
    const int n = problem.cols();
    const CostClass cls = classify(problem);
    const bool certifiable = cls == CostClass::Linear || cls == CostClass::Convex;

    SolveResult result;
    double objective = total_cost(problem, x);
    Matrix cs(m, n);
    int iterations = 0;
    int stalled = 0;
    const int bland_after = m + n;
    const int stall_limit = m * n + 2 * (m + n);
    SolveStatus status = SolveStatus::IterationLimit;

    for (int pass = 0; pass < options.max_iterations; ++pass) {
        const Duals duals = compute_duals(problem, x, basis);
        const Matrix w = reduced_derivatives(problem, x, duals);
        const auto& nonbasic = basis.nonbasic_mask();
        kern.hadamard(x.data(), w.data(), cs.data(), cs.size());

        kernels::ArgValue dmin =
            kern.masked_min(w.data(), nonbasic.data(), w.size());
        kernels::ArgValue gmax =
            kern.masked_max(cs.data(), nonbasic.data(), cs.size());
        const kernels::ArgValue csmin =
            kern.masked_min(cs.data(), nonbasic.data(), cs.size());

        // Thresholds are cost-scaled to match the certificate's.
        const double scale = std::max(1.0, objective);
        const double tol = options.tol * scale;
        if (stalled >= bland_after && dmin.index >= 0 && dmin.value < -tol) {
            // Cycle-breaking variant of the entering rule.
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (nonbasic[k] && w.data()[k] < -tol) {
                    dmin.index = static_cast<std::ptrdiff_t>(k);
                    dmin.value = w.data()[k];
                    break;
                }
            }
        }

        bool want_increase = dmin.index >= 0 && dmin.value < -tol;
        const bool want_decrease = gmax.index >= 0 && gmax.value > tol;
        if (!want_increase && !want_decrease && csmin.index >= 0 &&
            csmin.value < -tol) {
            // A positive nonbasic cell whose derivative is barely negative
            // can violate slackness while w alone clears the test; increase
            // that cell so the certificate and the stop test agree.
            dmin.index = csmin.index;
            dmin.value = w.data()[csmin.index];
            want_increase = true;
        }
        if (!want_increase && !want_decrease) {
            status = certifiable ? SolveStatus::Optimal : SolveStatus::KktPoint;
            break;
        }

        // Case 1: only a decrease move; Case 2: only an increase; Case 3:
        // both qualify and the larger first-order improvement wins, with ties
        // going to the increase.
        int case_tag;
        bool increase;
        std::vector<Cell> loop;
        ThetaStep step;
        if (want_increase && !want_decrease) {
            case_tag = 2;
            increase = true;
        } else if (!want_increase && want_decrease) {
            case_tag = 1;
            increase = false;
        } else {
            case_tag = 3;
            const Cell rl = cell_of(dmin.index, n);
            loop = find_loop(m, n, basis, rl);
            step = max_theta(x, loop);
            const double gain_increase = -dmin.value * step.theta;
            increase = gain_increase >= gmax.value;
        }

        Cell entering;
        if (increase) {
            entering = cell_of(dmin.index, n);
            if (loop.empty()) {
                loop = find_loop(m, n, basis, entering);
                step = max_theta(x, loop);
            }
        } else {
            entering = cell_of(gmax.index, n);
            loop = find_loop(m, n, basis, entering);
            step = max_theta_decrease(x, loop);
        }

        const Allocation y = increase
                                 ? apply_theta(x, loop, step.theta)
                                 : apply_theta_decrease(x, loop, step.theta);
        LineSearchResult ls = line_search(problem, x, y, options.line_search_tol);

        const double eq_tol = 1e-9 * std::max(1.0, step.theta);
        const bool full_step = nearly_equal(ls.x, y, eq_tol);
        bool basis_changed = false;
        if (full_step) {
            ls.x = y;  // snap so the blocking cell is exactly zero
            ls.objective = total_cost(problem, y);
            Cell leaving = step.blocking;
            if (stalled >= bland_after) {
                leaving = smallest_blocking(x, loop, step.theta,
                                            increase ? 1 : 0);
            }
            // On a decrease the entering cell itself may hit zero first; the
            // basis is then left alone.
            if (increase || leaving != entering) {
                basis.swap(leaving, entering);
                basis_changed = true;
            }
        }

        if (options.trace) {
            result.trace.push_back({iterations, entering, case_tag, step.theta,
                                    ls.lambda, objective, ls.objective,
                                    basis_changed});
        }
        const bool moved = !bitwise_equal(ls.x, x);
        x = std::move(ls.x);
        objective = ls.objective;
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

}  // namespace nltrans
