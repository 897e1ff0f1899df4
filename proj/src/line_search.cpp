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

// Exact line search between two feasible allocations. Golden section on the
// objective narrows to the requested width, but near the minimum the
// objective is flat to machine precision over a band of width
// ~sqrt(eps*phi/L), which caps the placement accuracy of a value-only
// search. A short derivative-sign bisection around the best sample recovers
// the remaining digits; it only replaces the golden result when it does not
// measurably worsen the objective.

#include <algorithm>
#include <cmath>
#include <vector>

#include "nltrans/errors.hpp"
#include "nltrans/kernels.hpp"
#include "nltrans/solvers.hpp"

namespace nltrans {

namespace {
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2
}

LineSearchResult line_search(const Problem& problem, const Allocation& x_k,
                             const Allocation& y_k, double tol) {
    if (!x_k.same_shape(y_k) || x_k.rows() != problem.rows() ||
        x_k.cols() != problem.cols()) {
        throw DimensionMismatch("line search endpoints do not match the problem");
    }
    try {
        check_feasible(problem, x_k);
        check_feasible(problem, y_k);
    } catch (const Error& e) {
        throw InfeasibleEndpoint(e.what());
    }

    const auto& kern = kernels::active_backend();
    const CostTable& table = problem.table();
    const std::size_t cells = x_k.size();
    thread_local std::vector<double> point;
    thread_local std::vector<double> slope;
    point.resize(cells);
    slope.resize(cells);

    auto phi = [&](double lam) {
        kern.convex_combine(lam, x_k.data(), y_k.data(), point.data(), cells);
        return detail::table_cost(table, point.data());
    };
    auto dphi = [&](double lam) {
        kern.convex_combine(lam, x_k.data(), y_k.data(), point.data(), cells);
        detail::table_derivatives(table, problem.costs(), point.data(),
                                  slope.data());
        double s = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            s += slope[c] * (x_k.data()[c] - y_k.data()[c]);
        }
        return s;
    };

    const double phi0 = phi(0.0);
    const double phi1 = phi(1.0);
    double best_lam = 0.0;
    double best_phi = phi0;
    auto consider = [&](double lam, double value) {
        if (value < best_phi) {
            best_phi = value;
            best_lam = lam;
        }
    };
    consider(1.0, phi1);

    double lo = 0.0, hi = 1.0;
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = phi(c), fd = phi(d);
    consider(c, fc);
    consider(d, fd);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = phi(c);
            consider(c, fc);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = phi(d);
            consider(d, fd);
        }
    }

    // Derivative polish around the flat band.
    const double radius = std::max(1e-4, 128.0 * tol);
    double pa = std::max(0.0, best_lam - radius);
    double pb = std::min(1.0, best_lam + radius);
    if (pb > pa && dphi(pa) < 0.0 && dphi(pb) > 0.0) {
        for (int step = 0; step < 64 && pb - pa > 1e-16; ++step) {
            const double mid = 0.5 * (pa + pb);
            if (dphi(mid) < 0.0) pa = mid; else pb = mid;
        }
        const double cand = 0.5 * (pa + pb);
        const double value = phi(cand);
        // Accept on derivative evidence: the values are equal to rounding
        // inside the band, so only a measurable regression rejects.
        if (value <= best_phi + 4e-16 * std::max(1.0, std::abs(best_phi))) {
            best_lam = cand;
            best_phi = value;
        }
    }

    LineSearchResult result;
    result.lambda = best_lam;
    result.objective = best_phi;
    if (best_lam == 0.0) {
        result.x = y_k;
    } else if (best_lam == 1.0) {
        result.x = x_k;
    } else {
        result.x = Allocation(x_k.rows(), x_k.cols());
        kern.convex_combine(best_lam, x_k.data(), y_k.data(), result.x.data(),
                            result.x.size());
    }
    return result;
}

}  // namespace nltrans
