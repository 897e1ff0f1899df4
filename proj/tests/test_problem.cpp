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
#include "nltrans/problem.hpp"
#include "nltrans/problem_json.hpp"
#include "testutil.hpp"

using namespace nltrans;
using testutil::make_allocation;

TEST_CASE("validate accepts a balanced linear grid") {
    CHECK_NOTHROW(validate(testutil::linear_2x2()));
}

TEST_CASE("validate reports the balance gap") {
    const Problem p({2}, {1, 2}, {LinearCost{1}, LinearCost{1}});
    try {
        validate(p);
        FAIL("expected Unbalanced");
    } catch (const Unbalanced& e) {
        CHECK(e.gap == doctest::Approx(-1.0));
    }
}

TEST_CASE("validate pinpoints bad cost cells") {
    const Problem p({1, 1}, {1, 1},
                    {LinearCost{1}, DiscountCost{{0, 2}, {1.0, 1.5}},
                     LinearCost{1}, LinearCost{1}});
    try {
        validate(p);
        FAIL("expected InvalidCostModel");
    } catch (const InvalidCostModel& e) {
        CHECK(e.row == 0);
        CHECK(e.col == 1);
    }
}

TEST_CASE("validate rejects negative quantities") {
    CHECK_THROWS_AS(validate(Problem({-1, 2}, {1}, {LinearCost{1}, LinearCost{1}})),
                    NegativeQuantity);
    CHECK_THROWS_AS(validate(Problem({1}, {-1, 2}, {LinearCost{1}, LinearCost{1}})),
                    NegativeQuantity);
}

TEST_CASE("problem construction rejects bad shapes") {
    CHECK_THROWS_AS(Problem({}, {1}, {}), DimensionMismatch);
    CHECK_THROWS_AS(Problem({1}, {1}, {LinearCost{1}, LinearCost{1}}),
                    DimensionMismatch);
}

TEST_CASE("balance leaves balanced problems untouched") {
    const Problem p = testutil::linear_2x2();
    const Problem q = balance(p);
    CHECK(q.rows() == p.rows());
    CHECK(q.cols() == p.cols());
    CHECK(q.supply() == p.supply());
    CHECK(q.demand() == p.demand());
}

TEST_CASE("balance appends a dummy destination for surplus supply") {
    const Problem p({3}, {1, 1}, {LinearCost{4}, LinearCost{5}});
    const Problem q = balance(p);
    CHECK(q.cols() == 3);
    CHECK(q.demand() == std::vector<double>{1, 1, 1});
    CHECK(std::get<LinearCost>(q.cost(0, 2)).rate == 0.0);
    CHECK_NOTHROW(validate(q));
}

TEST_CASE("balance appends a dummy source for surplus demand") {
    const Problem p({1, 1}, {3}, {LinearCost{4}, LinearCost{5}});
    const Problem q = balance(p);
    CHECK(q.rows() == 3);
    CHECK(q.supply() == std::vector<double>{1, 1, 1});
    CHECK(std::get<LinearCost>(q.cost(2, 0)).rate == 0.0);
    CHECK_NOTHROW(validate(q));
}

TEST_CASE("balance is idempotent") {
    const Problem p({3, 4}, {2, 2}, {LinearCost{1}, LinearCost{2}, LinearCost{3},
                                     LinearCost{4}});
    const Problem once = balance(p);
    const Problem twice = balance(once);
    CHECK(once.rows() == twice.rows());
    CHECK(once.cols() == twice.cols());
    CHECK(once.supply() == twice.supply());
    CHECK(once.demand() == twice.demand());
}

TEST_CASE("classify routes grids to the right solver family") {
    CHECK(classify(testutil::linear_2x2()) == CostClass::Linear);
    CHECK(classify(testutil::concave_2x2()) == CostClass::Concave);
    CHECK(classify(testutil::quad_2x2()) == CostClass::Convex);
    CHECK(classify(testutil::discount_2x2()) == CostClass::Concave);
    // quadratic with q = 0 counts as linear
    const Problem ql({1}, {1}, {QuadraticCost{3, 0}});
    CHECK(classify(ql) == CostClass::Linear);
    const Problem mixed({1, 1}, {1, 1},
                        {QuadraticCost{0, 1}, PowerCost{1, 0.5}, LinearCost{1},
                         LinearCost{1}});
    CHECK(classify(mixed) == CostClass::Mixed);
}

TEST_CASE("total_cost sums the per-cell models") {
    const Problem p = testutil::linear_2x2();
    CHECK(total_cost(p, make_allocation(2, 2, {0, 0, 0, 0})) == 0.0);
    CHECK(total_cost(p, make_allocation(2, 2, {1, 0, 0, 1})) == 2.0);
    const Problem q = testutil::quad_2x2();
    CHECK(total_cost(q, make_allocation(2, 2, {0.5, 1.5, 1.5, 0.5})) ==
          doctest::Approx(3.5));
    CHECK_THROWS_AS(total_cost(p, Allocation(3, 2)), DimensionMismatch);
}

TEST_CASE("total_cost agrees with direct visitation on random mixed grids") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> value(0.0, 10.0);
    for (int round = 0; round < 25; ++round) {
        const Problem p = testutil::random_concave(rng);
        Allocation x(p.rows(), p.cols());
        for (std::size_t k = 0; k < x.size(); ++k) x.data()[k] = value(rng);
        CHECK(total_cost(p, x) ==
              doctest::Approx(testutil::direct_total_cost(p, x)).epsilon(1e-12));
    }
}

TEST_CASE("derivative_matrix matches cell_derivative per cell") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> value(0.0, 10.0);
    for (int round = 0; round < 25; ++round) {
        const Problem p = testutil::random_concave(rng);
        Allocation x(p.rows(), p.cols());
        for (std::size_t k = 0; k < x.size(); ++k) x.data()[k] = value(rng);
        const Matrix d = derivative_matrix(p, x);
        for (int i = 0; i < p.rows(); ++i) {
            for (int j = 0; j < p.cols(); ++j) {
                CHECK(d.at(i, j) == cell_derivative(p.cost(i, j), x.at(i, j)));
            }
        }
    }
}

TEST_CASE("problem json round-trips semantically") {
    const Problem problems[] = {testutil::linear_2x2(), testutil::quad_2x2(),
                                testutil::concave_2x2(), testutil::discount_2x2()};
    for (const Problem& p : problems) {
        const Problem q = parse_problem(serialize_problem(p));
        REQUIRE(q.rows() == p.rows());
        REQUIRE(q.cols() == p.cols());
        CHECK(q.supply() == p.supply());
        CHECK(q.demand() == p.demand());
        for (int i = 0; i < p.rows(); ++i) {
            for (int j = 0; j < p.cols(); ++j) {
                CHECK(q.cost(i, j) == p.cost(i, j));
            }
        }
    }
}

TEST_CASE("problem json parse errors carry a diagnostic") {
    CHECK_THROWS_AS(parse_problem("{"), ParseError);
    CHECK_THROWS_AS(parse_problem("[]"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"supply":[1],"demand":[1]})"), ParseError);
    CHECK_THROWS_AS(parse_problem(
                        R"({"supply":[1],"demand":[1],"costs":[[{"kind":"cubic"}]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(
                        R"({"supply":[1],"demand":[1],"costs":[[{"kind":"linear"}]]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(
                        R"({"supply":[1],"demand":[1,1],"costs":[[{"kind":"linear","c":1}]]})"),
                    ParseError);
}
