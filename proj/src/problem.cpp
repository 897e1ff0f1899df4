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

#include "nltrans/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nltrans/errors.hpp"
#include "nltrans/kernels.hpp"

namespace nltrans {

namespace {

CostTable build_table(int m, int n, const std::vector<CostModel>& costs) {
    CostTable t;
    t.cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < t.cells; ++k) {
        const CostModel& c = costs[k];
        if (const auto* lin = std::get_if<LinearCost>(&c)) {
            t.poly_index.push_back(static_cast<std::int32_t>(k));
            t.poly_lin.push_back(lin->rate);
            t.poly_quad.push_back(0.0);
        } else if (const auto* q = std::get_if<QuadraticCost>(&c)) {
            t.poly_index.push_back(static_cast<std::int32_t>(k));
            t.poly_lin.push_back(q->linear);
            t.poly_quad.push_back(q->quadratic);
        } else if (const auto* p = std::get_if<PowerCost>(&c)) {
            t.power_index.push_back(static_cast<std::int32_t>(k));
            t.power_coef.push_back(p->coefficient);
            t.power_exp.push_back(p->exponent);
        } else {
            const auto& d = std::get<DiscountCost>(c);
            t.discount_index.push_back(static_cast<std::int32_t>(k));
            t.segment_begin.push_back(static_cast<std::int32_t>(t.segment_break.size()));
            t.segment_count.push_back(static_cast<std::int32_t>(d.breaks.size()));
            double base = 0.0;
            for (std::size_t s = 0; s < d.breaks.size(); ++s) {
                t.segment_break.push_back(d.breaks[s]);
                t.segment_rate.push_back(d.rates[s]);
                t.segment_base.push_back(base);
                if (s + 1 < d.breaks.size()) {
                    base += d.rates[s] * (d.breaks[s + 1] - d.breaks[s]);
                }
            }
        }
    }
    t.poly_only = t.poly_index.size() == t.cells;
    return t;
}

thread_local std::vector<double> g_scratch_a;
thread_local std::vector<double> g_scratch_b;

}  // namespace

Problem::Problem(std::vector<double> supply, std::vector<double> demand,
                 std::vector<CostModel> costs)
    : m_(static_cast<int>(supply.size())),
      n_(static_cast<int>(demand.size())),
      supply_(std::move(supply)),
      demand_(std::move(demand)),
      costs_(std::move(costs)) {
    if (m_ < 1 || n_ < 1) {
        throw DimensionMismatch("problem needs at least one source and one destination");
    }
    if (costs_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_)) {
        throw DimensionMismatch("cost grid has " + std::to_string(costs_.size()) +
                                " cells, expected " + std::to_string(m_ * n_));
    }
    total_supply_ = std::accumulate(supply_.begin(), supply_.end(), 0.0);
    feas_tol_ = 1e-9 * std::max(1.0, total_supply_);
    table_ = build_table(m_, n_, costs_);
}

void validate(const Problem& problem) {
    for (int i = 0; i < problem.rows(); ++i) {
        if (problem.supply()[i] < 0.0) {
            throw NegativeQuantity("supply[" + std::to_string(i) + "]",
                                   problem.supply()[i]);
        }
    }
    for (int j = 0; j < problem.cols(); ++j) {
        if (problem.demand()[j] < 0.0) {
            throw NegativeQuantity("demand[" + std::to_string(j) + "]",
                                   problem.demand()[j]);
        }
    }
    std::string why;
    for (int i = 0; i < problem.rows(); ++i) {
        for (int j = 0; j < problem.cols(); ++j) {
            if (!cost_model_valid(problem.cost(i, j), &why)) {
                throw InvalidCostModel(i, j, why);
            }
        }
    }
    const double total_demand = std::accumulate(problem.demand().begin(),
                                                problem.demand().end(), 0.0);
    const double gap = problem.total_supply() - total_demand;
    if (std::abs(gap) > problem.feasibility_tol()) throw Unbalanced(gap);
}

Problem balance(const Problem& problem) {
    const double total_demand = std::accumulate(problem.demand().begin(),
                                                problem.demand().end(), 0.0);
    const double gap = problem.total_supply() - total_demand;
    if (std::abs(gap) <= problem.feasibility_tol()) return problem;

    std::vector<double> supply = problem.supply();
    std::vector<double> demand = problem.demand();
    std::vector<CostModel> costs;
    if (gap > 0.0) {
        // Surplus supply: absorb it in a free dummy destination.
        costs.reserve(problem.costs().size() + supply.size());
        for (int i = 0; i < problem.rows(); ++i) {
            for (int j = 0; j < problem.cols(); ++j) costs.push_back(problem.cost(i, j));
            costs.push_back(LinearCost{0.0});
        }
        demand.push_back(gap);
    } else {
        costs = problem.costs();
        costs.insert(costs.end(), demand.size(), CostModel{LinearCost{0.0}});
        supply.push_back(-gap);
    }
    return Problem(std::move(supply), std::move(demand), std::move(costs));
}

CostClass classify(const Problem& problem) {
    bool all_linear = true, all_convex = true, all_concave = true;
    for (const CostModel& c : problem.costs()) {
        all_linear = all_linear && cell_is_linear(c);
        all_convex = all_convex && cell_is_convex(c);
        all_concave = all_concave && cell_is_concave(c);
    }
    if (all_linear) return CostClass::Linear;
    if (all_convex) return CostClass::Convex;
    if (all_concave) return CostClass::Concave;
    return CostClass::Mixed;
}

namespace detail {

double table_cost(const CostTable& table, const double* x) {
    const auto& k = kernels::active_backend();
    double total = 0.0;

    const std::size_t np = table.poly_index.size();
    if (np > 0) {
        g_scratch_a.resize(np);
        const double* xs = x;
        if (!table.poly_only) {
            g_scratch_b.resize(np);
            k.gather(x, table.poly_index.data(), g_scratch_b.data(), np);
            xs = g_scratch_b.data();
        }
        k.poly_cost(table.poly_lin.data(), table.poly_quad.data(), xs,
                    g_scratch_a.data(), np);
        total += k.sum(g_scratch_a.data(), np);
    }

    for (std::size_t c = 0; c < table.power_index.size(); ++c) {
        const double xi = x[table.power_index[c]];
        if (xi != 0.0) total += table.power_coef[c] * std::pow(xi, table.power_exp[c]);
    }

    for (std::size_t c = 0; c < table.discount_index.size(); ++c) {
        const double xi = x[table.discount_index[c]];
        const std::int32_t begin = table.segment_begin[c];
        std::int32_t s = begin + table.segment_count[c] - 1;
        while (s > begin && table.segment_break[s] > xi) --s;
        total += table.segment_base[s] +
                 table.segment_rate[s] * (xi - table.segment_break[s]);
    }
    return total;
}

void table_derivatives(const CostTable& table,
                       const std::vector<CostModel>& costs, const double* x,
                       double* out) {
    const auto& k = kernels::active_backend();

    const std::size_t np = table.poly_index.size();
    if (np > 0) {
        if (table.poly_only) {
            k.poly_derivative(table.poly_lin.data(), table.poly_quad.data(), x,
                              out, np);
        } else {
            g_scratch_a.resize(np);
            g_scratch_b.resize(np);
            k.gather(x, table.poly_index.data(), g_scratch_b.data(), np);
            k.poly_derivative(table.poly_lin.data(), table.poly_quad.data(),
                              g_scratch_b.data(), g_scratch_a.data(), np);
            for (std::size_t c = 0; c < np; ++c) {
                out[table.poly_index[c]] = g_scratch_a[c];
            }
        }
    }
    for (std::size_t c = 0; c < table.power_index.size(); ++c) {
        const std::int32_t at = table.power_index[c];
        out[at] = cell_derivative(costs[at], x[at]);
    }
    for (std::size_t c = 0; c < table.discount_index.size(); ++c) {
        const std::int32_t at = table.discount_index[c];
        const std::int32_t begin = table.segment_begin[c];
        std::int32_t s = begin + table.segment_count[c] - 1;
        while (s > begin && table.segment_break[s] > x[at]) --s;
        out[at] = table.segment_rate[s];
    }
}

}  // namespace detail

double total_cost(const Problem& problem, const Allocation& x) {
    if (x.rows() != problem.rows() || x.cols() != problem.cols()) {
        throw DimensionMismatch("allocation shape does not match the problem");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.data()[i] < 0.0) throw NegativeArgument(x.data()[i]);
    }
    return detail::table_cost(problem.table(), x.data());
}

Matrix derivative_matrix(const Problem& problem, const Allocation& x) {
    if (x.rows() != problem.rows() || x.cols() != problem.cols()) {
        throw DimensionMismatch("allocation shape does not match the problem");
    }
    Matrix out(problem.rows(), problem.cols());
    detail::table_derivatives(problem.table(), problem.costs(), x.data(),
                              out.data());
    return out;
}

}  // namespace nltrans
