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

#pragma once

#include <cstddef>
#include <cstdint>

namespace bowsim::kernels {

// Dense kernels behind the batch scorer and the vector measures.
//
// The finalize kernels are pure lane-wise IEEE arithmetic and produce
// bit-identical results on every backend. The reductions may reorder the
// summation and agree across backends only up to rounding.
struct Backend {
    const char* name;

    double (*reduce_sum)(const double* v, std::size_t n);
    double (*reduce_sum_squares)(const double* v, std::size_t n);

    // out[i] = dot[i] == 0 ? 0 : dot[i] / (query_norm * norms[i])
    void (*cosine_finalize)(
        const double* dot, const double* norms, double query_norm, double* out, std::size_t n);

    // out[i] = min_sum[i] == 0 ? 0 : min_sum[i] / ((query_sum + sums[i]) - min_sum[i])
    void (*minmax_ratio_finalize)(
        const double* min_sum, const double* sums, double query_sum, double* out, std::size_t n);

    // out[i] = shared[i] == 0 ? 0 : shared[i] / (query_terms + terms[i] - shared[i])
    void (*set_overlap_finalize)(const std::int32_t* shared,
                                 const std::int32_t* terms,
                                 std::int32_t query_terms,
                                 double* out,
                                 std::size_t n);

    // out[i] = shared[i] == 0 ? 0 : acc[i] / (query_terms + terms[i] - shared[i])
    void (*union_normalize_finalize)(const double* acc,
                                     const std::int32_t* shared,
                                     const std::int32_t* terms,
                                     std::int32_t query_terms,
                                     double* out,
                                     std::size_t n);
};

const Backend& scalar();

// True when the build carries the AVX2 backend and the CPU supports it.
bool avx2_supported();

// Valid only when avx2_supported().
const Backend& avx2();

// Runtime-selected backend; best available unless the BOWSIM_KERNELS
// environment variable forces "scalar" or "avx2". Resolved once.
const Backend& active();

}  // namespace bowsim::kernels
