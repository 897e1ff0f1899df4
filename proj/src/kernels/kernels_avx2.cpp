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

// Compiled with -mavx2 and only reached after a runtime CPU check. The
// element-wise kernels apply the exact operation sequence of the scalar
// reference (mul/mul/mul/add etc., never FMA) so results are bit-identical;
// the vector tails reuse the scalar expressions verbatim.

#include "nltrans/kernels.hpp"

#ifdef NLTRANS_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>

namespace nltrans::kernels {
namespace avx2 {

void poly_cost(const double* lin, const double* quad, const double* x,
               double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vl = _mm256_loadu_pd(lin + i);
        const __m256d vq = _mm256_loadu_pd(quad + i);
        const __m256d t1 = _mm256_mul_pd(vl, vx);
        const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(vq, vx), vx);
        _mm256_storeu_pd(out + i, _mm256_add_pd(t1, t2));
    }
    for (; i < n; ++i) out[i] = lin[i] * x[i] + quad[i] * x[i] * x[i];
}

void poly_derivative(const double* lin, const double* quad, const double* x,
                     double* out, std::size_t n) {
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vl = _mm256_loadu_pd(lin + i);
        const __m256d vq = _mm256_loadu_pd(quad + i);
        const __m256d t = _mm256_mul_pd(_mm256_mul_pd(two, vq), vx);
        _mm256_storeu_pd(out + i, _mm256_add_pd(vl, t));
    }
    for (; i < n; ++i) out[i] = lin[i] + 2.0 * quad[i] * x[i];
}

void reduced_costs(const double* deriv, const double* row_pot,
                   const double* col_pot, double* out, std::size_t rows,
                   std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double u = row_pot[i];
        const __m256d vu = _mm256_set1_pd(u);
        const double* d = deriv + i * cols;
        double* w = out + i * cols;
        std::size_t j = 0;
        for (; j + 4 <= cols; j += 4) {
            const __m256d vd = _mm256_loadu_pd(d + j);
            const __m256d vv = _mm256_loadu_pd(col_pot + j);
            _mm256_storeu_pd(w + j, _mm256_sub_pd(_mm256_sub_pd(vd, vu), vv));
        }
        for (; j < cols; ++j) w[j] = (d[j] - u) - col_pot[j];
    }
}

void convex_combine(double lam, const double* a, const double* b, double* out,
                    std::size_t n) {
    const double mu = 1.0 - lam;
    const __m256d vl = _mm256_set1_pd(lam);
    const __m256d vm = _mm256_set1_pd(mu);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(
            out + i, _mm256_add_pd(_mm256_mul_pd(vl, va), _mm256_mul_pd(vm, vb)));
    }
    for (; i < n; ++i) out[i] = lam * a[i] + mu * b[i];
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void gather(const double* src, const std::int32_t* idx, double* out,
            std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m128i vi =
            _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
        _mm256_storeu_pd(out + i, _mm256_i32gather_pd(src, vi, 8));
    }
    for (; i < n; ++i) out[i] = src[idx[i]];
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i];
    return s;
}

namespace {

// Per-lane (value, index) tracking with strict comparisons keeps the first
// occurrence within each lane; the horizontal resolve then prefers the lowest
// index among tied lanes, which reproduces the scalar first-wins order.
template <bool kMin>
ArgValue masked_extremum(const double* x, const std::uint8_t* mask,
                         std::size_t n) {
    const double sentinel = kMin ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
    const __m256d vsent = _mm256_set1_pd(sentinel);
    const __m256i iota = _mm256_set_epi64x(3, 2, 1, 0);
    __m256d vbest = vsent;
    __m256i vidx = _mm256_set1_epi64x(-1);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::uint32_t m4;
        std::memcpy(&m4, mask + i, 4);
        const __m256i m64 =
            _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(m4)));
        const __m256i eligible = _mm256_cmpgt_epi64(m64, _mm256_setzero_si256());
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d cand =
            _mm256_blendv_pd(vsent, vx, _mm256_castsi256_pd(eligible));
        const __m256d better = kMin ? _mm256_cmp_pd(cand, vbest, _CMP_LT_OQ)
                                    : _mm256_cmp_pd(cand, vbest, _CMP_GT_OQ);
        vbest = _mm256_blendv_pd(vbest, cand, better);
        const __m256i vi =
            _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(i)), iota);
        vidx = _mm256_blendv_epi8(vidx, vi, _mm256_castpd_si256(better));
    }
    double lanes[4];
    long long lidx[4];
    _mm256_storeu_pd(lanes, vbest);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lidx), vidx);
    ArgValue best;
    for (int k = 0; k < 4; ++k) {
        if (lidx[k] < 0) continue;
        const bool strictly_better =
            best.index < 0 ||
            (kMin ? lanes[k] < best.value : lanes[k] > best.value);
        if (strictly_better ||
            (lanes[k] == best.value && lidx[k] < best.index)) {
            best.index = static_cast<std::ptrdiff_t>(lidx[k]);
            best.value = lanes[k];
        }
    }
    for (; i < n; ++i) {
        if (!mask[i]) continue;
        const bool better =
            best.index < 0 || (kMin ? x[i] < best.value : x[i] > best.value);
        if (better) {
            best.index = static_cast<std::ptrdiff_t>(i);
            best.value = x[i];
        }
    }
    return best;
}

}  // namespace

ArgValue masked_min(const double* x, const std::uint8_t* mask, std::size_t n) {
    return masked_extremum<true>(x, mask, n);
}

ArgValue masked_max(const double* x, const std::uint8_t* mask, std::size_t n) {
    return masked_extremum<false>(x, mask, n);
}

}  // namespace avx2

const Backend& avx2_backend() {
    static const Backend table = {
        "avx2",
        avx2::poly_cost,
        avx2::poly_derivative,
        avx2::reduced_costs,
        avx2::convex_combine,
        avx2::hadamard,
        avx2::gather,
        avx2::sum,
        avx2::masked_min,
        avx2::masked_max,
    };
    return table;
}

}  // namespace nltrans::kernels

#else

namespace nltrans::kernels {

const Backend& avx2_backend() { return scalar_backend(); }

}  // namespace nltrans::kernels

#endif  // NLTRANS_HAVE_AVX2
