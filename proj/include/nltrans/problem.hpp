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

#include <cstdint>
#include <span>
#include <vector>

#include "nltrans/cost_model.hpp"
#include "nltrans/tableau_types.hpp"

namespace nltrans {

/// Grid of cost cells regrouped by evaluation lane so the array kernels can
/// chew on contiguous parameters. Linear and quadratic cells share the
/// polynomial lane (a*x + b*x^2); power and discount cells are evaluated
/// cell-wise.
struct CostTable {
    std::size_t cells = 0;
    bool poly_only = false;  // poly lane covers every cell in grid order

    std::vector<std::int32_t> poly_index;
    std::vector<double> poly_lin, poly_quad;

    std::vector<std::int32_t> power_index;
    std::vector<double> power_coef, power_exp;

    std::vector<std::int32_t> discount_index;
    std::vector<std::int32_t> segment_begin, segment_count;  // per discount cell
    std::vector<double> segment_break, segment_rate, segment_base;
};

/// A balanced transportation instance: m sources with supplies, n
/// destinations with demands, and one separable cost model per cell.
/// Immutable after construction.
class Problem {
public:
    Problem(std::vector<double> supply, std::vector<double> demand,
            std::vector<CostModel> costs);  // costs row-major, m*n entries

    int rows() const { return m_; }
    int cols() const { return n_; }
    const std::vector<double>& supply() const { return supply_; }
    const std::vector<double>& demand() const { return demand_; }
    const CostModel& cost(int i, int j) const { return costs_[idx(i, j)]; }
    const std::vector<CostModel>& costs() const { return costs_; }
    const CostTable& table() const { return table_; }

    double total_supply() const { return total_supply_; }
    /// Absolute tolerance for feasibility comparisons: 1e-9 * max(1, sum s).
    double feasibility_tol() const { return feas_tol_; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }

    int m_ = 0, n_ = 0;
    std::vector<double> supply_, demand_;
    std::vector<CostModel> costs_;
    CostTable table_;
    double total_supply_ = 0.0;
    double feas_tol_ = 1e-9;
};

/// Checks dimensions, sign constraints, per-cell cost rules and balance.
void validate(const Problem& problem);

/// Repairs an unbalanced instance by appending a zero-cost dummy destination
/// (or source). Balanced input comes back unchanged. Idempotent.
Problem balance(const Problem& problem);

CostClass classify(const Problem& problem);

/// Sum of cell costs over the grid. Throws DimensionMismatch when x does not
/// conform.
double total_cost(const Problem& problem, const Allocation& x);

/// Marginal cost of every cell at the given allocation, as a matrix.
Matrix derivative_matrix(const Problem& problem, const Allocation& x);

namespace detail {
/// total_cost against a prebuilt table and a raw value array (hot path for
/// the line search; no dimension checks).
double table_cost(const CostTable& table, const double* x);
void table_derivatives(const CostTable& table,
                       const std::vector<CostModel>& costs, const double* x,
                       double* out);
}  // namespace detail

}  // namespace nltrans
