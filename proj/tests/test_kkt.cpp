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

#include <doctest.h>

#include <random>

#include "nltrans/errors.hpp"
#include "nltrans/kkt.hpp"
#include "nltrans/oracle.hpp"
#include "nltrans/solvers.hpp"
#include "testutil.hpp"

using namespace nltrans;
using testutil::make_allocation;

TEST_CASE("reduced_derivatives does the dual subtraction") {
    const Problem p = testutil::linear_2x2();
    const Allocation x = make_allocation(2, 2, {1, 0, 0, 1});
    const Matrix w = reduced_derivatives(p, x, Duals{{0, -1}, {1, 2}});
    CHECK(w.at(0, 0) == 0.0);
    CHECK(w.at(0, 1) == 0.0);
    CHECK(w.at(1, 0) == 2.0);
    CHECK(w.at(1, 1) == 0.0);
}

TEST_CASE("zero duals reproduce the derivative matrix") {
    const Problem p = testutil::quad_2x2();
    const Allocation x = make_allocation(2, 2, {0.5, 1.5, 1.5, 0.5});
    const Matrix w = reduced_derivatives(p, x, Duals{{0, 0}, {0, 0}});
    const Matrix d = derivative_matrix(p, x);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(w.data()[k] == d.data()[k]);
}

TEST_CASE("check_kkt certifies the linear optimum") {
    const Problem p = testutil::linear_2x2();
    const Allocation x = make_allocation(2, 2, {1, 0, 0, 1});
    const Basis basis(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    const KktReport report = check_kkt(p, x, basis);
    CHECK(report.satisfied);
    CHECK(report.max_stationarity_violation == 0.0);
    CHECK(report.max_nonneg_violation == 0.0);
    CHECK(report.max_cs_violation == 0.0);
    CHECK(report.w.at(1, 0) == 2.0);
}

TEST_CASE("check_kkt rejects the suboptimal vertex") {
    const Problem p = testutil::linear_2x2();
    const Allocation x = make_allocation(2, 2, {0, 1, 1, 0});
    const Basis basis(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    const KktReport report = check_kkt(p, x, basis);
    CHECK_FALSE(report.satisfied);
    CHECK(report.max_nonneg_violation > 0.0);  // some w < 0
    CHECK(report.w.at(1, 1) == doctest::Approx(-2.0));
}

TEST_CASE("a 1x1 problem is always a KKT point") {
    const Problem p({4}, {4}, {PowerCost{2, 0.5}});
    const KktReport report =
        check_kkt(p, make_allocation(1, 1, {4}), Basis(1, 1, {{0, 0}}));
    CHECK(report.satisfied);
}

TEST_CASE("check_kkt propagates feasibility errors") {
    const Problem p = testutil::linear_2x2();
    const Basis basis(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    CHECK_THROWS_AS(check_kkt(p, make_allocation(2, 2, {1, 0, 1, 0}), basis),
                    ColSumViolation);
}

TEST_CASE("basic-cell stationarity is exactly zero through check_kkt") {
    std::mt19937 rng(67);
    for (int round = 0; round < 100; ++round) {
        const Problem p = testutil::random_convex_quadratic(rng);
        const auto [x, basis] = initial_solution(p, IbfsRule::NorthwestCorner);
        const KktReport report = check_kkt(p, x, basis);
        CHECK(report.max_stationarity_violation == 0.0);
    }
}

TEST_CASE("satisfied vertices admit no improving single pivot on linear grids") {
    std::mt19937 rng(71);
    int satisfied_seen = 0;
    for (int round = 0; round < 120; ++round) {
        const Problem p = testutil::random_linear(rng, 4);
        const auto [x, basis] = initial_solution(p, IbfsRule::Vogel);
        const KktReport report = check_kkt(p, x, basis);
        if (!report.satisfied) continue;
        ++satisfied_seen;
        const double objective = total_cost(p, x);
        for (int i = 0; i < p.rows(); ++i) {
            for (int j = 0; j < p.cols(); ++j) {
                if (basis.contains({i, j})) continue;
                const auto loop = find_loop(p.rows(), p.cols(), basis, {i, j});
                const ThetaStep step = max_theta(x, loop);
                const Allocation y = apply_theta(x, loop, step.theta);
                CHECK(total_cost(p, y) >= objective - 1e-9);
            }
        }
    }
    CHECK(satisfied_seen > 0);  // the scan has to have exercised something
}

TEST_CASE("satisfied concave vertices admit no first-order improving pivot") {
    std::mt19937 rng(73);
    for (int round = 0; round < 60; ++round) {
        const Problem p = testutil::random_concave(rng);
        const SolveResult result = solve_concave(p, SolverOptions{});
        if (!result.solution.kkt.satisfied) continue;
        const double tol =
            kDefaultKktTol * std::max(1.0, result.solution.objective);
        const Matrix& w = result.solution.kkt.w;
        for (std::size_t k = 0; k < w.size(); ++k) {
            CHECK(w.data()[k] >= -tol);
        }
    }
}

TEST_CASE("satisfied convex solutions sit at the oracle optimum") {
    std::mt19937 rng(79);
    for (int round = 0; round < 25; ++round) {
        const Problem p = testutil::random_convex_quadratic(rng, 3);
        const SolveResult result = solve_convex(p, SolverOptions{});
        REQUIRE(result.solution.kkt.satisfied);
        const double reference = convex_reference(p, 1e-7);
        const double scale = std::max(1.0, result.solution.objective);
        CHECK(std::abs(result.solution.objective - reference) <= 1e-6 * scale);
    }
}
