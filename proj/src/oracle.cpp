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

#include "nltrans/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nltrans/errors.hpp"
#include "nltrans/solvers.hpp"

namespace nltrans {

namespace {

// m^(n-1) * n^(m-1), saturating above the cap so the overflow case still
// reports TooLarge with a meaningful count.
std::uint64_t spanning_tree_count(int m, int n, std::uint64_t cap) {
    std::uint64_t count = 1;
    const std::uint64_t lid = static_cast<std::uint64_t>(m);
    const std::uint64_t rid = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = cap >= UINT64_MAX / 4 ? UINT64_MAX / 4 : cap * 4 + 16;
    for (int k = 0; k < n - 1; ++k) {
        count *= lid;
        if (count > limit) return limit;
    }
    for (int k = 0; k < m - 1; ++k) {
        count *= rid;
        if (count > limit) return limit;
    }
    return count;
}

// Union-by-size with an undo stack; no path compression so joins roll back
// in O(1) during the include/exclude recursion.
struct UndoableDsu {
    std::vector<int> parent, size;
    std::vector<std::pair<int, int>> undo_stack;  // (absorbed root, new root)

    explicit UndoableDsu(int n)
        : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int a) const {
        while (parent[static_cast<std::size_t>(a)] != a) {
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    bool join(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size[static_cast<std::size_t>(ra)] > size[static_cast<std::size_t>(rb)]) {
            std::swap(ra, rb);
        }
        parent[static_cast<std::size_t>(ra)] = rb;
        size[static_cast<std::size_t>(rb)] += size[static_cast<std::size_t>(ra)];
        undo_stack.emplace_back(ra, rb);
        return true;
    }
    void undo() {
        const auto [ra, rb] = undo_stack.back();
        undo_stack.pop_back();
        parent[static_cast<std::size_t>(ra)] = ra;
        size[static_cast<std::size_t>(rb)] -= size[static_cast<std::size_t>(ra)];
    }
};

struct Enumerator {
    const Problem& problem;
    int m, n, need;
    std::vector<Cell> all_cells;
    std::vector<Cell> chosen;
    UndoableDsu dsu;
    std::uint64_t visited = 0;
    const std::function<void(const std::vector<Cell>&, const Allocation&, double)>& sink;

    // scratch for solve_tree, reused across trees
    std::vector<double> residual;
    std::vector<int> degree;
    std::vector<int> leaf_queue;
    std::vector<std::vector<int>> incident;

    Enumerator(const Problem& p,
               const std::function<void(const std::vector<Cell>&, const Allocation&,
                                        double)>& sink)
        : problem(p), m(p.rows()), n(p.cols()), need(p.rows() + p.cols() - 1),
          dsu(p.rows() + p.cols()), sink(sink),
          residual(static_cast<std::size_t>(m + n)),
          degree(static_cast<std::size_t>(m + n)),
          incident(static_cast<std::size_t>(m + n)) {
        all_cells.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) all_cells.push_back({i, j});
        }
        chosen.reserve(static_cast<std::size_t>(need));
    }

    // Basic values by leaf elimination; false when a value breaches the
    // -1e-9 clamp (infeasible tree).
    bool solve_tree(const std::vector<Cell>& tree, Allocation& x) {
        for (int i = 0; i < m; ++i) residual[static_cast<std::size_t>(i)] = problem.supply()[i];
        for (int j = 0; j < n; ++j) residual[static_cast<std::size_t>(m + j)] = problem.demand()[j];
        for (auto& lst : incident) lst.clear();
        for (std::size_t e = 0; e < tree.size(); ++e) {
            incident[static_cast<std::size_t>(tree[e].row)].push_back(static_cast<int>(e));
            incident[static_cast<std::size_t>(m + tree[e].col)].push_back(static_cast<int>(e));
        }
        leaf_queue.clear();
        for (int node = 0; node < m + n; ++node) {
            degree[static_cast<std::size_t>(node)] =
                static_cast<int>(incident[static_cast<std::size_t>(node)].size());
            if (degree[static_cast<std::size_t>(node)] == 1) leaf_queue.push_back(node);
        }
        std::vector<std::uint8_t> edge_done(tree.size(), 0);

        x = Allocation(m, n);
        for (std::size_t head = 0; head < leaf_queue.size(); ++head) {
            const int node = leaf_queue[head];
            int edge = -1;
            for (int e : incident[static_cast<std::size_t>(node)]) {
                if (!edge_done[static_cast<std::size_t>(e)]) { edge = e; break; }
            }
            if (edge < 0) continue;  // last node of the elimination
            const Cell c = tree[static_cast<std::size_t>(edge)];
            const int other = node == c.row ? m + c.col : c.row;
            double value = residual[static_cast<std::size_t>(node)];
            if (value < -1e-9) return false;
            if (value < 0.0) value = 0.0;
            x.at(c) = value;
            residual[static_cast<std::size_t>(node)] = 0.0;
            residual[static_cast<std::size_t>(other)] -= value;
            edge_done[static_cast<std::size_t>(edge)] = 1;
            --degree[static_cast<std::size_t>(node)];
            if (--degree[static_cast<std::size_t>(other)] == 1) leaf_queue.push_back(other);
        }
        return true;
    }

    void recurse(std::size_t idx) {
        if (static_cast<int>(chosen.size()) == need) {
            ++visited;
            Allocation x;
            if (solve_tree(chosen, x)) {
                sink(chosen, x, total_cost(problem, x));
            }
            return;
        }
        if (idx >= all_cells.size()) return;
        if (static_cast<int>(chosen.size()) +
                static_cast<int>(all_cells.size() - idx) < need) {
            return;
        }
        const Cell c = all_cells[idx];
        if (dsu.join(c.row, m + c.col)) {  // cycle edges are skipped
            chosen.push_back(c);
            recurse(idx + 1);
            chosen.pop_back();
            dsu.undo();
        }
        recurse(idx + 1);
    }
};

std::uint64_t enumerate_with(
    const Problem& problem, std::uint64_t cap,
    const std::function<void(const std::vector<Cell>&, const Allocation&, double)>&
        sink) {
    const std::uint64_t count =
        spanning_tree_count(problem.rows(), problem.cols(), cap);
    if (count > cap) throw TooLarge(count, cap);
    Enumerator en(problem, sink);
    en.recurse(0);
    return en.visited;
}

}  // namespace

VertexCatalog enumerate_vertices(const Problem& problem, std::uint64_t cap) {
    VertexCatalog catalog;
    catalog.tree_count = spanning_tree_count(problem.rows(), problem.cols(), cap);
    catalog.trees_visited = enumerate_with(
        problem, cap,
        [&catalog](const std::vector<Cell>& tree, const Allocation& x,
                   double objective) {
            catalog.entries.push_back({tree, x, objective});
        });
    return catalog;
}

std::pair<Allocation, double> global_min_vertex(const Problem& problem,
                                                std::uint64_t cap) {
    Allocation best;
    double best_objective = 0.0;
    bool found = false;
    enumerate_with(problem, cap,
                   [&](const std::vector<Cell>&, const Allocation& x,
                       double objective) {
                       if (!found || objective < best_objective) {
                           best = x;
                           best_objective = objective;
                           found = true;
                       }
                   });
    if (!found) {
        throw Error("no feasible vertex found; is the problem balanced?");
    }
    return {best, best_objective};
}

namespace {

double inner(const Matrix& a, const double* b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.data()[k] * b[k];
    return s;
}

}  // namespace

// Frank-Wolfe with away steps. The plain toward-step method zigzags when the
// optimum sits on a face (measured: hundreds of thousands of iterations to a
// 1e-6 gap on 4x4 quadratics), so the iterate keeps a convex decomposition
// over visited vertices and may also step away from the worst active vertex;
// for strongly convex objectives this restores a linear rate. Every
// iteration still linearizes at the current point, solves the linear
// transportation problem with solve_linear, takes an exact 1-D line search,
// and stops on the duality gap.
double convex_reference(const Problem& problem, double tol, IbfsRule start) {
    const CostClass cls = classify(problem);
    if (cls != CostClass::Linear && cls != CostClass::Convex) {
        throw NotConvex("convex reference requires a linear or convex cost grid");
    }

    auto [x, basis] = initial_solution(problem, start);
    double objective = total_cost(problem, x);

    struct Atom {
        Allocation vertex;
        double weight;
    };
    std::vector<Atom> active;
    active.push_back({x, 1.0});

    constexpr int kMaxIterations = 100000;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const Matrix grad = derivative_matrix(problem, x);
        std::vector<CostModel> linearized;
        linearized.reserve(grad.size());
        for (std::size_t k = 0; k < grad.size(); ++k) {
            linearized.push_back(LinearCost{grad.data()[k]});
        }
        const Problem sub(problem.supply(), problem.demand(), std::move(linearized));
        const SolveResult lp = solve_linear(sub, SolverOptions{});
        const Allocation& toward = lp.solution.x;

        const double at_x = inner(grad, x.data());
        const double gap = at_x - inner(grad, toward.data());
        if (gap <= tol * std::max(1.0, std::abs(objective))) return objective;

        std::size_t worst = 0;
        for (std::size_t k = 1; k < active.size(); ++k) {
            if (inner(grad, active[k].vertex.data()) >
                inner(grad, active[worst].vertex.data())) {
                worst = k;
            }
        }
        const double away_score = inner(grad, active[worst].vertex.data()) - at_x;

        if (gap >= away_score || active.size() == 1) {
            // Toward step along [x, toward]; lambda = 1 keeps x.
            const LineSearchResult ls = line_search(problem, x, toward);
            const double tau = 1.0 - ls.lambda;
            x = ls.x;
            objective = ls.objective;
            for (Atom& atom : active) atom.weight *= (1.0 - tau);
            bool merged = false;
            for (Atom& atom : active) {
                if (atom.vertex.values() == toward.values()) {
                    atom.weight += tau;
                    merged = true;
                    break;
                }
            }
            if (!merged && tau > 0.0) active.push_back({toward, tau});
        } else {
            // Away step from the worst active vertex: x + t*(x - a) stays in
            // the polytope while the margins cancel and no cell goes
            // negative; the weight bound keeps the decomposition valid.
            const Allocation& away = active[worst].vertex;
            const double alpha = active[worst].weight;
            double t_max = alpha < 1.0 ? alpha / (1.0 - alpha) : 1e18;
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double drop = away.data()[k] - x.data()[k];
                if (drop > 0.0 && x.data()[k] < t_max * drop) {
                    t_max = x.data()[k] / drop;
                }
            }
            if (t_max <= 0.0) {
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
                continue;
            }
            Allocation far(x.rows(), x.cols());
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double value =
                    x.data()[k] + t_max * (x.data()[k] - away.data()[k]);
                far.data()[k] = value < 0.0 ? 0.0 : value;
            }
            const LineSearchResult ls = line_search(problem, x, far);
            const double t_taken = (1.0 - ls.lambda) * t_max;
            x = ls.x;
            objective = ls.objective;
            for (Atom& atom : active) atom.weight *= (1.0 + t_taken);
            active[worst].weight -= t_taken;
            if (active[worst].weight <= 1e-12) {
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
            }
        }

        double total = 0.0;
        for (const Atom& atom : active) total += atom.weight;
        if (total > 0.0) {
            for (Atom& atom : active) atom.weight /= total;
        }
    }
    return objective;
}

}  // namespace nltrans
