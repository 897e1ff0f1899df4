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

#include "nltrans/ibfs.hpp"

#include <algorithm>
#include <limits>

#include "nltrans/errors.hpp"

namespace nltrans {

std::string to_string(IbfsRule rule) {
    switch (rule) {
        case IbfsRule::NorthwestCorner: return "northwest";
        case IbfsRule::Vogel:           return "vogel";
        case IbfsRule::RowMinima:       return "rowmin";
        case IbfsRule::LeastCost:       return "leastcost";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Allocation state shared by all rules. Each step places one basic cell and
// retires exactly one active line (the final step retires the last two),
// which yields m+n-1 basic cells forming a spanning tree.
struct Builder {
    const Problem& problem;
    Matrix rank;  // marginal cost at zero, the ranking key for cost rules
    std::vector<double> s_rem, d_rem;
    std::vector<std::uint8_t> row_active, col_active;
    int active_rows, active_cols;
    Allocation x;
    std::vector<Cell> cells;

    explicit Builder(const Problem& p)
        : problem(p), rank(p.rows(), p.cols()),
          s_rem(p.supply()), d_rem(p.demand()),
          row_active(static_cast<std::size_t>(p.rows()), 1),
          col_active(static_cast<std::size_t>(p.cols()), 1),
          active_rows(p.rows()), active_cols(p.cols()),
          x(p.rows(), p.cols()) {
        for (int i = 0; i < p.rows(); ++i) {
            for (int j = 0; j < p.cols(); ++j) {
                rank.at(i, j) = cell_derivative(p.cost(i, j), 0.0);
            }
        }
    }

    void place(Cell c) {
        const bool last = active_rows == 1 && active_cols == 1;
        const double a =
            std::max(0.0, std::min(s_rem[static_cast<std::size_t>(c.row)],
                                   d_rem[static_cast<std::size_t>(c.col)]));
        x.at(c) = a;
        cells.push_back(c);
        s_rem[static_cast<std::size_t>(c.row)] -= a;
        d_rem[static_cast<std::size_t>(c.col)] -= a;

        if (last) {
            retire_row(c.row);
            retire_col(c.col);
            return;
        }
        const double tol = problem.feasibility_tol();
        const bool row_done = s_rem[static_cast<std::size_t>(c.row)] <= tol;
        const bool col_done = d_rem[static_cast<std::size_t>(c.col)] <= tol;
        if (row_done && col_done) {
            // Simultaneous exhaustion: consume the column and keep the row
            // alive at zero (unless this is the last column).
            if (active_cols > 1) retire_col(c.col); else retire_row(c.row);
        } else if (col_done) {
            retire_col(c.col);
        } else {
            retire_row(c.row);
        }
    }

    void retire_row(int i) {
        row_active[static_cast<std::size_t>(i)] = 0;
        --active_rows;
    }
    void retire_col(int j) {
        col_active[static_cast<std::size_t>(j)] = 0;
        --active_cols;
    }

    bool active(Cell c) const {
        return row_active[static_cast<std::size_t>(c.row)] &&
               col_active[static_cast<std::size_t>(c.col)];
    }

    Cell northwest() const {
        Cell c;
        for (int i = 0; i < problem.rows(); ++i) {
            if (row_active[static_cast<std::size_t>(i)]) { c.row = i; break; }
        }
        for (int j = 0; j < problem.cols(); ++j) {
            if (col_active[static_cast<std::size_t>(j)]) { c.col = j; break; }
        }
        return c;
    }

    Cell least_cost() const {
        Cell best;
        double best_rank = kInf;
        bool found = false;
        for (int i = 0; i < problem.rows(); ++i) {
            if (!row_active[static_cast<std::size_t>(i)]) continue;
            for (int j = 0; j < problem.cols(); ++j) {
                if (!col_active[static_cast<std::size_t>(j)]) continue;
                if (!found || rank.at(i, j) < best_rank) {
                    best = {i, j};
                    best_rank = rank.at(i, j);
                    found = true;
                }
            }
        }
        return best;
    }

    Cell row_minima() const {
        int i = 0;
        while (!row_active[static_cast<std::size_t>(i)]) ++i;
        Cell best{i, -1};
        double best_rank = kInf;
        for (int j = 0; j < problem.cols(); ++j) {
            if (!col_active[static_cast<std::size_t>(j)]) continue;
            if (best.col < 0 || rank.at(i, j) < best_rank) {
                best.col = j;
                best_rank = rank.at(i, j);
            }
        }
        return best;
    }

    // Penalty of a line: gap between its two cheapest active cells; a line
    // with a single active cell uses that cell's rank.
    double line_penalty(bool is_row, int index) const {
        double lo = kInf, lo2 = kInf;
        int count = 0;
        const int extent = is_row ? problem.cols() : problem.rows();
        for (int k = 0; k < extent; ++k) {
            const Cell c = is_row ? Cell{index, k} : Cell{k, index};
            if (!active(c)) continue;
            ++count;
            const double r = rank.at(c);
            if (r < lo) { lo2 = lo; lo = r; }
            else if (r < lo2) { lo2 = r; }
        }
        if (count == 0) return -kInf;
        return count == 1 ? lo : lo2 - lo;
    }

    Cell vogel() const {
        // Highest penalty wins; rows are scanned before columns and lower
        // indexes win ties.
        bool best_is_row = true;
        int best_line = -1;
        double best_penalty = -kInf;
        for (int i = 0; i < problem.rows(); ++i) {
            if (!row_active[static_cast<std::size_t>(i)]) continue;
            const double p = line_penalty(true, i);
            if (p > best_penalty) { best_penalty = p; best_is_row = true; best_line = i; }
        }
        for (int j = 0; j < problem.cols(); ++j) {
            if (!col_active[static_cast<std::size_t>(j)]) continue;
            const double p = line_penalty(false, j);
            if (p > best_penalty) { best_penalty = p; best_is_row = false; best_line = j; }
        }
        Cell best;
        double best_rank = kInf;
        bool found = false;
        const int extent = best_is_row ? problem.cols() : problem.rows();
        for (int k = 0; k < extent; ++k) {
            const Cell c = best_is_row ? Cell{best_line, k} : Cell{k, best_line};
            if (!active(c)) continue;
            if (!found || rank.at(c) < best_rank) {
                best = c;
                best_rank = rank.at(c);
                found = true;
            }
        }
        return best;
    }
};

}  // namespace

std::pair<Allocation, Basis> initial_solution(const Problem& problem,
                                              IbfsRule rule) {
    validate(problem);
    Builder b(problem);
    const int steps = problem.rows() + problem.cols() - 1;
    for (int step = 0; step < steps; ++step) {
        Cell next;
        switch (rule) {
            case IbfsRule::NorthwestCorner: next = b.northwest(); break;
            case IbfsRule::Vogel:           next = b.vogel(); break;
            case IbfsRule::RowMinima:       next = b.row_minima(); break;
            case IbfsRule::LeastCost:       next = b.least_cost(); break;
        }
        b.place(next);
    }
    return {std::move(b.x),
            Basis(problem.rows(), problem.cols(), std::move(b.cells))};
}

}  // namespace nltrans
