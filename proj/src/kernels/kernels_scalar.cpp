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

#include "nltrans/kernels.hpp"

namespace nltrans::kernels {
namespace scalar {

void poly_cost(const double* lin, const double* quad, const double* x,
               double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lin[i] * x[i] + quad[i] * x[i] * x[i];
    }
}

void poly_derivative(const double* lin, const double* quad, const double* x,
                     double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lin[i] + 2.0 * quad[i] * x[i];
    }
}

void reduced_costs(const double* deriv, const double* row_pot,
                   const double* col_pot, double* out, std::size_t rows,
                   std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double u = row_pot[i];
        const double* d = deriv + i * cols;
        double* w = out + i * cols;
        for (std::size_t j = 0; j < cols; ++j) {
            w[j] = (d[j] - u) - col_pot[j];
        }
    }
}

void convex_combine(double lam, const double* a, const double* b, double* out,
                    std::size_t n) {
    const double mu = 1.0 - lam;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lam * a[i] + mu * b[i];
    }
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void gather(const double* src, const std::int32_t* idx, double* out,
            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = src[idx[i]];
}

// Fixed 4-lane blocked order, identical to the vector backend's accumulator
// layout, so sums are bit-equal across backends.
double sum(const double* x, std::size_t n) {
    double lane0 = 0.0, lane1 = 0.0, lane2 = 0.0, lane3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lane0 += x[i];
        lane1 += x[i + 1];
        lane2 += x[i + 2];
        lane3 += x[i + 3];
    }
    double s = (lane0 + lane1) + (lane2 + lane3);
    for (; i < n; ++i) s += x[i];
    return s;
}

ArgValue masked_min(const double* x, const std::uint8_t* mask, std::size_t n) {
    ArgValue best;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        if (best.index < 0 || x[i] < best.value) {
            best.index = static_cast<std::ptrdiff_t>(i);
            best.value = x[i];
        }
    }
    return best;
}

ArgValue masked_max(const double* x, const std::uint8_t* mask, std::size_t n) {
    ArgValue best;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        if (best.index < 0 || x[i] > best.value) {
            best.index = static_cast<std::ptrdiff_t>(i);
            best.value = x[i];
        }
    }
    return best;
}

}  // namespace scalar

const Backend& scalar_backend() {
    static const Backend table = {
        "scalar",
        scalar::poly_cost,
        scalar::poly_derivative,
        scalar::reduced_costs,
        scalar::convex_combine,
        scalar::hadamard,
        scalar::gather,
        scalar::sum,
        scalar::masked_min,
        scalar::masked_max,
    };
    return table;
}

}  // namespace nltrans::kernels
