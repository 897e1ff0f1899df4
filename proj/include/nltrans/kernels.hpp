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

#include <cstddef>
#include <cstdint>

namespace nltrans::kernels {

/// Result of a masked arg-reduction. index == -1 when no element is eligible.
struct ArgValue {
    std::ptrdiff_t index = -1;
    double value = 0.0;
};

// Dense array kernels behind the tableau arithmetic. Every member has a
// scalar reference implementation and (on x86-64) an AVX2 variant selected
// at runtime. All kernels are bit-identical across backends: element-wise
// kernels evaluate the same per-element expression in the same operation
// order with no FMA contraction, the sum uses a fixed 4-lane blocked
// reduction order in both implementations, and arg-reductions break ties
// toward the lowest index.
struct Backend {
    const char* name;

    // out[i] = lin[i]*x[i] + quad[i]*x[i]*x[i]
    void (*poly_cost)(const double* lin, const double* quad, const double* x,
                      double* out, std::size_t n);
    // out[i] = lin[i] + 2*quad[i]*x[i]
    void (*poly_derivative)(const double* lin, const double* quad,
                            const double* x, double* out, std::size_t n);
    // out[i*cols+j] = (deriv[i*cols+j] - row_pot[i]) - col_pot[j]
    void (*reduced_costs)(const double* deriv, const double* row_pot,
                          const double* col_pot, double* out, std::size_t rows,
                          std::size_t cols);
    // out[i] = lam*a[i] + (1-lam)*b[i]
    void (*convex_combine)(double lam, const double* a, const double* b,
                           double* out, std::size_t n);
    // out[i] = a[i]*b[i]
    void (*hadamard)(const double* a, const double* b, double* out,
                     std::size_t n);
    // out[k] = src[idx[k]]
    void (*gather)(const double* src, const std::int32_t* idx, double* out,
                   std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    // min/max over elements with mask[i] != 0; first index wins ties
    ArgValue (*masked_min)(const double* x, const std::uint8_t* mask,
                           std::size_t n);
    ArgValue (*masked_max)(const double* x, const std::uint8_t* mask,
                           std::size_t n);
};

const Backend& scalar_backend();

/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();

/// AVX2 variant; falls back to the scalar table when unavailable.
const Backend& avx2_backend();

/// Backend used by the library. Picks the best supported variant once per
/// process; NLTRANS_KERNELS=scalar|avx2 forces a choice.
const Backend& active_backend();

}  // namespace nltrans::kernels
