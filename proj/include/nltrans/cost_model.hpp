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

#include <string>
#include <variant>
#include <vector>

namespace nltrans {

/// Marginal cost of a power-law cell at x=0 is unbounded; it is clamped to
/// this value so dual and reduced-cost arithmetic stays finite. Cells at zero
/// are nonbasic, so the clamp never flips a sign test.
inline constexpr double kDerivativeCap = 1e12;

/// f(x) = rate * x
struct LinearCost {
    double rate = 0.0;
    bool operator==(const LinearCost&) const = default;
};

/// f(x) = linear * x + quadratic * x^2. Convex iff quadratic >= 0.
struct QuadraticCost {
    double linear = 0.0;
    double quadratic = 0.0;
    bool operator==(const QuadraticCost&) const = default;
};

/// f(x) = coefficient * x^exponent with 0 < exponent <= 1 (concave).
struct PowerCost {
    double coefficient = 0.0;
    double exponent = 1.0;
    bool operator==(const PowerCost&) const = default;
};

/// Incremental volume-discount schedule. breaks[k] opens segment k, which is
/// billed at rates[k] per unit until the next breakpoint; breaks[0] == 0 and
/// rates must be strictly decreasing, so f is continuous, piecewise linear
/// and concave.
struct DiscountCost {
    std::vector<double> breaks;
    std::vector<double> rates;
    bool operator==(const DiscountCost&) const = default;
};

using CostModel = std::variant<LinearCost, QuadraticCost, PowerCost, DiscountCost>;

enum class CostClass { Linear, Convex, Concave, Mixed };

std::string to_string(CostClass c);

/// Cost of shipping quantity x through one cell. Throws NegativeArgument for
/// x < 0. Every variant has f(0) == 0.
double cell_cost(const CostModel& model, double x);

/// Marginal cost at x. Right-hand derivative at discount breakpoints; clamped
/// to `cap` where the analytic value exceeds it (power cells near 0).
double cell_derivative(const CostModel& model, double x,
                       double cap = kDerivativeCap);

/// True when the variant's own parameter rules hold. On failure `why` (if
/// non-null) receives the violated rule.
bool cost_model_valid(const CostModel& model, std::string* why = nullptr);

bool cell_is_convex(const CostModel& model);
bool cell_is_concave(const CostModel& model);
/// Affine cells (constant marginal cost) count as linear.
bool cell_is_linear(const CostModel& model);

}  // namespace nltrans
