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

#include "nltrans/kkt.hpp"

#include <algorithm>
#include <cmath>

#include "nltrans/errors.hpp"
#include "nltrans/kernels.hpp"

namespace nltrans {

Matrix reduced_derivatives(const Problem& problem, const Allocation& x,
                           const Duals& duals) {
    if (x.rows() != problem.rows() || x.cols() != problem.cols() ||
        duals.u.size() != static_cast<std::size_t>(problem.rows()) ||
        duals.v.size() != static_cast<std::size_t>(problem.cols())) {
        throw DimensionMismatch("allocation or duals do not match the problem");
    }
    const Matrix deriv = derivative_matrix(problem, x);
    Matrix w(problem.rows(), problem.cols());
    kernels::active_backend().reduced_costs(
        deriv.data(), duals.u.data(), duals.v.data(), w.data(),
        static_cast<std::size_t>(problem.rows()),
        static_cast<std::size_t>(problem.cols()));
    return w;
}

KktReport check_kkt(const Problem& problem, const Allocation& x,
                    const Basis& basis, double tol) {
    check_feasible(problem, x);
    const Duals duals = compute_duals(problem, x, basis);

    KktReport report;
    report.w = reduced_derivatives(problem, x, duals);

    // Basic cells: evaluate d - u - v in whichever association the dual
    // solve pinned exactly; the kernel's fixed order can sit an ulp off when
    // the other potential was the assigned one.
    const Matrix deriv = derivative_matrix(problem, x);
    for (const Cell& c : basis.cells()) {
        const double d = deriv.at(c);
        const double u = duals.u[static_cast<std::size_t>(c.row)];
        const double v = duals.v[static_cast<std::size_t>(c.col)];
        const double mirrored = (d - v) - u;
        if (std::abs(mirrored) < std::abs(report.w.at(c))) {
            report.w.at(c) = mirrored;
        }
    }

    report.cs = Matrix(problem.rows(), problem.cols());
    kernels::active_backend().hadamard(x.data(), report.w.data(),
                                       report.cs.data(), x.size());

    for (const Cell& c : basis.cells()) {
        report.max_stationarity_violation =
            std::max(report.max_stationarity_violation, std::abs(report.w.at(c)));
    }
    for (std::size_t k = 0; k < report.w.size(); ++k) {
        report.max_nonneg_violation =
            std::max(report.max_nonneg_violation, -report.w.data()[k]);
    }
    report.max_nonneg_violation = std::max(report.max_nonneg_violation, 0.0);
    const auto& nonbasic = basis.nonbasic_mask();
    for (std::size_t k = 0; k < report.cs.size(); ++k) {
        if (nonbasic[k]) {
            report.max_cs_violation =
                std::max(report.max_cs_violation, std::abs(report.cs.data()[k]));
        }
    }

    // The tolerance is cost-scaled: a value-based line search cannot place
    // reduced derivatives more precisely than the objective's resolution
    // allows, so an absolute test would be unattainable for expensive
    // problems and needlessly loose for cheap ones.
    const double scale = std::max(1.0, total_cost(problem, x));
    report.satisfied = report.max_stationarity_violation <= tol * scale &&
                       report.max_nonneg_violation <= tol * scale &&
                       report.max_cs_violation <= tol * scale;
    return report;
}

}  // namespace nltrans
