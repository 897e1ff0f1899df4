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

#include "nltrans/cost_model.hpp"

#include <cmath>
#include <cstddef>

#include "nltrans/errors.hpp"

namespace nltrans {

std::string to_string(CostClass c) {
    switch (c) {
        case CostClass::Linear:  return "linear";
        case CostClass::Convex:  return "convex";
        case CostClass::Concave: return "concave";
        case CostClass::Mixed:   return "mixed";
    }
    return "unknown";
}

namespace {

// Segment holding x: last segment whose breakpoint is <= x. Breakpoints are
// strictly increasing and start at 0, so x >= 0 always lands somewhere.
std::size_t discount_segment(const DiscountCost& d, double x) {
    std::size_t k = d.breaks.size() - 1;
    while (k > 0 && d.breaks[k] > x) --k;
    return k;
}

double discount_cost(const DiscountCost& d, double x) {
    const std::size_t k = discount_segment(d, x);
    double base = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
        base += d.rates[s] * (d.breaks[s + 1] - d.breaks[s]);
    }
    return base + d.rates[k] * (x - d.breaks[k]);
}

}  // namespace

double cell_cost(const CostModel& model, double x) {
    if (x < 0.0) throw NegativeArgument(x);
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) {
                return m.rate * x;
            } else if constexpr (std::is_same_v<T, QuadraticCost>) {
                return m.linear * x + m.quadratic * x * x;
            } else if constexpr (std::is_same_v<T, PowerCost>) {
                return x == 0.0 ? 0.0 : m.coefficient * std::pow(x, m.exponent);
            } else {
                return discount_cost(m, x);
            }
        },
        model);
}

double cell_derivative(const CostModel& model, double x, double cap) {
    if (x < 0.0) throw NegativeArgument(x);
    return std::visit(
        [x, cap](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) {
                return m.rate;
            } else if constexpr (std::is_same_v<T, QuadraticCost>) {
                return m.linear + 2.0 * m.quadratic * x;
            } else if constexpr (std::is_same_v<T, PowerCost>) {
                if (m.exponent == 1.0) return m.coefficient;
                if (x == 0.0) return cap;
                const double d =
                    m.coefficient * m.exponent * std::pow(x, m.exponent - 1.0);
                return d < cap ? d : cap;
            } else {
                // Right-hand derivative at breakpoints.
                return m.rates[discount_segment(m, x)];
            }
        },
        model);
}

bool cost_model_valid(const CostModel& model, std::string* why) {
    auto fail = [why](const char* rule) {
        if (why) *why = rule;
        return false;
    };
    return std::visit(
        [&](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) {
                if (!std::isfinite(m.rate)) return fail("linear rate must be finite");
                return true;
            } else if constexpr (std::is_same_v<T, QuadraticCost>) {
                if (!std::isfinite(m.linear) || !std::isfinite(m.quadratic))
                    return fail("quadratic terms must be finite");
                return true;
            } else if constexpr (std::is_same_v<T, PowerCost>) {
                if (!(m.coefficient >= 0.0))
                    return fail("power coefficient must be >= 0");
                if (!(m.exponent > 0.0 && m.exponent <= 1.0))
                    return fail("power exponent must be in (0, 1]");
                return true;
            } else {
                if (m.breaks.empty() || m.breaks.size() != m.rates.size())
                    return fail("discount needs matching, nonempty breaks and rates");
                if (m.breaks.front() != 0.0)
                    return fail("first discount breakpoint must be 0");
                for (std::size_t k = 1; k < m.breaks.size(); ++k) {
                    if (!(m.breaks[k] > m.breaks[k - 1]))
                        return fail("discount breakpoints must strictly increase");
                }
                for (std::size_t k = 0; k < m.rates.size(); ++k) {
                    if (!(m.rates[k] > 0.0))
                        return fail("discount rates must be positive");
                    if (k > 0 && !(m.rates[k] < m.rates[k - 1]))
                        return fail("discount rates must strictly decrease");
                }
                return true;
            }
        },
        model);
}

bool cell_is_convex(const CostModel& model) {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) return true;
            else if constexpr (std::is_same_v<T, QuadraticCost>) return m.quadratic >= 0.0;
            else if constexpr (std::is_same_v<T, PowerCost>) return m.exponent == 1.0;
            else return m.rates.size() == 1;
        },
        model);
}

bool cell_is_concave(const CostModel& model) {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearCost>) return true;
            else if constexpr (std::is_same_v<T, QuadraticCost>) return m.quadratic <= 0.0;
            else return true;  // power (p <= 1) and discount schedules
        },
        model);
}

bool cell_is_linear(const CostModel& model) {
    return cell_is_convex(model) && cell_is_concave(model);
}

}  // namespace nltrans
