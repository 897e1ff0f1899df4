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

#include "nltrans/tableau.hpp"

#include <algorithm>
#include <cmath>

#include "nltrans/errors.hpp"

namespace nltrans {

Basis::Basis(int rows, int cols, std::vector<Cell> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)),
      basic_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0),
      nonbasic_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 1) {
    std::sort(cells_.begin(), cells_.end());
    for (const Cell& c : cells_) {
        if (c.row < 0 || c.row >= rows_ || c.col < 0 || c.col >= cols_) {
            throw OutOfRangeCell(c.row, c.col);
        }
        basic_[flat(c)] = 1;
        nonbasic_[flat(c)] = 0;
    }
}

void Basis::add(Cell c) {
    if (c.row < 0 || c.row >= rows_ || c.col < 0 || c.col >= cols_) {
        throw OutOfRangeCell(c.row, c.col);
    }
    if (contains(c)) return;
    cells_.insert(std::upper_bound(cells_.begin(), cells_.end(), c), c);
    basic_[flat(c)] = 1;
    nonbasic_[flat(c)] = 0;
}

void Basis::remove(Cell c) {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || *it != c) return;
    cells_.erase(it);
    basic_[flat(c)] = 0;
    nonbasic_[flat(c)] = 1;
}

void Basis::swap(Cell leaving, Cell entering) {
    remove(leaving);
    add(entering);
}

void check_feasible(const Problem& problem, const Allocation& x) {
    if (x.rows() != problem.rows() || x.cols() != problem.cols()) {
        throw DimensionMismatch("allocation shape does not match the problem");
    }
    const double tol = problem.feasibility_tol();
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            if (x.at(i, j) < -tol) throw NegativeCell(i, j, x.at(i, j));
        }
    }
    for (int i = 0; i < x.rows(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < x.cols(); ++j) sum += x.at(i, j);
        const double gap = sum - problem.supply()[i];
        if (std::abs(gap) > tol) throw RowSumViolation(i, gap);
    }
    for (int j = 0; j < x.cols(); ++j) {
        double sum = 0.0;
        for (int i = 0; i < x.rows(); ++i) sum += x.at(i, j);
        const double gap = sum - problem.demand()[j];
        if (std::abs(gap) > tol) throw ColSumViolation(j, gap);
    }
}

namespace {

// Bipartite node ids: rows are 0..m-1, columns are m..m+n-1.
struct TreeAdjacency {
    int rows, cols;
    std::vector<std::vector<int>> next;  // neighbour node per node

    TreeAdjacency(int m, int n, const Basis& basis) : rows(m), cols(n) {
        next.resize(static_cast<std::size_t>(m + n));
        for (const Cell& c : basis.cells()) {
            if (c.row < 0 || c.row >= m || c.col < 0 || c.col >= n) {
                throw OutOfRangeCell(c.row, c.col);
            }
            next[static_cast<std::size_t>(c.row)].push_back(m + c.col);
            next[static_cast<std::size_t>(m + c.col)].push_back(c.row);
        }
    }
};

}  // namespace

bool is_spanning_tree(int rows, int cols, const Basis& basis) {
    if (basis.size() != rows + cols - 1) return false;
    TreeAdjacency adj(rows, cols, basis);

    // m+n-1 edges on m+n nodes: connected implies acyclic.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows + cols), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        for (int peer : adj.next[static_cast<std::size_t>(node)]) {
            if (!seen[static_cast<std::size_t>(peer)]) {
                seen[static_cast<std::size_t>(peer)] = 1;
                ++visited;
                stack.push_back(peer);
            }
        }
    }
    return visited == rows + cols;
}

Duals compute_duals(const Problem& problem, const Allocation& x,
                    const Basis& basis) {
    const int m = problem.rows();
    const int n = problem.cols();
    if (!is_spanning_tree(m, n, basis)) {
        throw NotATree("basis is not a spanning tree of the tableau");
    }
    const Matrix deriv = derivative_matrix(problem, x);

    Duals duals;
    duals.u.assign(static_cast<std::size_t>(m), 0.0);
    duals.v.assign(static_cast<std::size_t>(n), 0.0);

    TreeAdjacency adj(m, n, basis);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(m + n), 0);
    std::vector<int> queue = {0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int node = queue[head];
        for (int peer : adj.next[static_cast<std::size_t>(node)]) {
            if (seen[static_cast<std::size_t>(peer)]) continue;
            seen[static_cast<std::size_t>(peer)] = 1;
            if (node < m) {
                // Known row potential, new column: v = d - u, which already
                // zeroes (d - u) - v exactly.
                const int j = peer - m;
                duals.v[static_cast<std::size_t>(j)] =
                    deriv.at(node, j) - duals.u[static_cast<std::size_t>(node)];
            } else {
                // Known column potential, new row: u = d - v, which zeroes
                // the mirrored expression (d - v) - u exactly.
                const int j = node - m;
                duals.u[static_cast<std::size_t>(peer)] =
                    deriv.at(peer, j) - duals.v[static_cast<std::size_t>(j)];
            }
            queue.push_back(peer);
        }
    }
    return duals;
}

std::vector<Cell> find_loop(int rows, int cols, const Basis& basis,
                            Cell entering) {
    if (entering.row < 0 || entering.row >= rows || entering.col < 0 ||
        entering.col >= cols) {
        throw OutOfRangeCell(entering.row, entering.col);
    }
    if (basis.contains(entering)) {
        throw EnteringIsBasic(entering.row, entering.col);
    }
    if (!is_spanning_tree(rows, cols, basis)) {
        throw NotATree("basis is not a spanning tree of the tableau");
    }

    // Tree path from the entering cell's column node to its row node; the
    // traversed edges are the basic cells of the cycle.
    TreeAdjacency adj(rows, cols, basis);
    const int start = rows + entering.col;
    const int goal = entering.row;
    std::vector<int> parent(static_cast<std::size_t>(rows + cols), -2);
    parent[static_cast<std::size_t>(start)] = -1;
    std::vector<int> queue = {start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int node = queue[head];
        if (node == goal) break;
        for (int peer : adj.next[static_cast<std::size_t>(node)]) {
            if (parent[static_cast<std::size_t>(peer)] != -2) continue;
            parent[static_cast<std::size_t>(peer)] = node;
            queue.push_back(peer);
        }
    }

    std::vector<int> path;  // goal -> ... -> start
    for (int node = goal; node != -1; node = parent[static_cast<std::size_t>(node)]) {
        path.push_back(node);
    }
    std::reverse(path.begin(), path.end());  // start -> ... -> goal

    std::vector<Cell> loop = {entering};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const int a = path[k];
        const int b = path[k + 1];
        const Cell edge = a < rows ? Cell{a, b - rows} : Cell{b, a - rows};
        loop.push_back(edge);
    }
    return loop;
}

namespace {

ThetaStep bounded_step(const Allocation& x, const std::vector<Cell>& loop,
                       std::size_t first_limiting) {
    if (loop.empty()) throw EmptyLoop();
    ThetaStep step;
    step.theta = -1.0;
    for (std::size_t k = first_limiting; k < loop.size(); k += 2) {
        const double value = x.at(loop[k]);
        if (step.theta < 0.0 || value < step.theta) {
            step.theta = value;
            step.blocking = loop[k];
            step.blocking_pos = static_cast<int>(k);
        }
    }
    return step;
}

Allocation shifted(const Allocation& x, const std::vector<Cell>& loop,
                   double theta, int entering_sign) {
    if (loop.empty()) throw EmptyLoop();
    Allocation out = x;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const bool even = (k % 2) == 0;
        const double delta = (even == (entering_sign > 0)) ? theta : -theta;
        out.at(loop[k]) += delta;
    }
    return out;
}

}  // namespace

ThetaStep max_theta(const Allocation& x, const std::vector<Cell>& loop) {
    return bounded_step(x, loop, 1);  // odd positions lose theta
}

ThetaStep max_theta_decrease(const Allocation& x,
                             const std::vector<Cell>& loop) {
    return bounded_step(x, loop, 0);  // even positions lose theta
}

Allocation apply_theta(const Allocation& x, const std::vector<Cell>& loop,
                       double theta) {
    const ThetaStep limit = max_theta(x, loop);
    if (theta < 0.0 || theta > limit.theta * (1.0 + 1e-12) + 1e-15) {
        throw ThetaTooLarge(theta, limit.theta);
    }
    return shifted(x, loop, theta, +1);
}

Allocation apply_theta_decrease(const Allocation& x,
                                const std::vector<Cell>& loop, double theta) {
    const ThetaStep limit = max_theta_decrease(x, loop);
    if (theta < 0.0 || theta > limit.theta * (1.0 + 1e-12) + 1e-15) {
        throw ThetaTooLarge(theta, limit.theta);
    }
    return shifted(x, loop, theta, -1);
}

}  // namespace nltrans
