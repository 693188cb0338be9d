// Copyright 2026-present the bowsim project
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

// Compiled with -mavx2 and without FMA so that mul/add rounding matches
// the scalar backend lane for lane.

#include "bowsim/kernels.hpp"

#if defined(BOWSIM_ENABLE_AVX2)

#include <immintrin.h>

namespace bowsim::kernels {

namespace {

double
hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d pair = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(pair, pair);
    return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

double
avx2_reduce_sum(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        sum += v[i];
    }
    return sum;
}

double
avx2_reduce_sum_squares(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(v + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        sum += v[i] * v[i];
    }
    return sum;
}

void
avx2_cosine_finalize(const double* dot, const double* norms, double query_norm, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d qn = _mm256_set1_pd(query_norm);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dot + i);
        __m256d q = _mm256_div_pd(d, _mm256_mul_pd(qn, _mm256_loadu_pd(norms + i)));
        __m256d is_zero = _mm256_cmp_pd(d, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(is_zero, q));
    }
    for (; i < n; ++i) {
        out[i] = dot[i] == 0.0 ? 0.0 : dot[i] / (query_norm * norms[i]);
    }
}

void
avx2_minmax_ratio_finalize(
    const double* min_sum, const double* sums, double query_sum, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d qs = _mm256_set1_pd(query_sum);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d m = _mm256_loadu_pd(min_sum + i);
        __m256d denom = _mm256_sub_pd(_mm256_add_pd(qs, _mm256_loadu_pd(sums + i)), m);
        __m256d q = _mm256_div_pd(m, denom);
        __m256d is_zero = _mm256_cmp_pd(m, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(is_zero, q));
    }
    for (; i < n; ++i) {
        out[i] = min_sum[i] == 0.0 ? 0.0 : min_sum[i] / ((query_sum + sums[i]) - min_sum[i]);
    }
}

void
avx2_set_overlap_finalize(
    const std::int32_t* shared, const std::int32_t* terms, std::int32_t query_terms, double* out, std::size_t n) {
    const __m128i qt = _mm_set1_epi32(query_terms);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(shared + i));
        __m128i t = _mm_loadu_si128(reinterpret_cast<const __m128i*>(terms + i));
        __m128i denom32 = _mm_sub_epi32(_mm_add_epi32(qt, t), s);
        __m256d q = _mm256_div_pd(_mm256_cvtepi32_pd(s), _mm256_cvtepi32_pd(denom32));
        __m128i zero32 = _mm_cmpeq_epi32(s, _mm_setzero_si128());
        __m256d is_zero = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(zero32));
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(is_zero, q));
    }
    for (; i < n; ++i) {
        out[i] = shared[i] == 0
                     ? 0.0
                     : static_cast<double>(shared[i]) / static_cast<double>(query_terms + terms[i] - shared[i]);
    }
}

void
avx2_union_normalize_finalize(const double* acc,
                              const std::int32_t* shared,
                              const std::int32_t* terms,
                              std::int32_t query_terms,
                              double* out,
                              std::size_t n) {
    const __m128i qt = _mm_set1_epi32(query_terms);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(shared + i));
        __m128i t = _mm_loadu_si128(reinterpret_cast<const __m128i*>(terms + i));
        __m128i denom32 = _mm_sub_epi32(_mm_add_epi32(qt, t), s);
        __m256d q = _mm256_div_pd(_mm256_loadu_pd(acc + i), _mm256_cvtepi32_pd(denom32));
        __m128i zero32 = _mm_cmpeq_epi32(s, _mm_setzero_si128());
        __m256d is_zero = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(zero32));
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(is_zero, q));
    }
    for (; i < n; ++i) {
        out[i] = shared[i] == 0 ? 0.0 : acc[i] / static_cast<double>(query_terms + terms[i] - shared[i]);
    }
}

constexpr Backend kAvx2 = {
    "avx2",
    avx2_reduce_sum,
    avx2_reduce_sum_squares,
    avx2_cosine_finalize,
    avx2_minmax_ratio_finalize,
    avx2_set_overlap_finalize,
    avx2_union_normalize_finalize,
};

}  // namespace

bool
avx2_supported() {
    return __builtin_cpu_supports("avx2");
}

const Backend&
avx2() {
    return kAvx2;
}

}  // namespace bowsim::kernels

#endif  // BOWSIM_ENABLE_AVX2
