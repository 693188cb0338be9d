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

#include "bowsim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace bowsim::kernels {

namespace {

double
scalar_reduce_sum(const double* v, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += v[i];
    }
    return sum;
}

double
scalar_reduce_sum_squares(const double* v, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += v[i] * v[i];
    }
    return sum;
}

void
scalar_cosine_finalize(const double* dot, const double* norms, double query_norm, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = dot[i] == 0.0 ? 0.0 : dot[i] / (query_norm * norms[i]);
    }
}

void
scalar_minmax_ratio_finalize(
    const double* min_sum, const double* sums, double query_sum, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = min_sum[i] == 0.0 ? 0.0 : min_sum[i] / ((query_sum + sums[i]) - min_sum[i]);
    }
}

void
scalar_set_overlap_finalize(
    const std::int32_t* shared, const std::int32_t* terms, std::int32_t query_terms, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = shared[i] == 0
                     ? 0.0
                     : static_cast<double>(shared[i]) / static_cast<double>(query_terms + terms[i] - shared[i]);
    }
}

void
scalar_union_normalize_finalize(const double* acc,
                                const std::int32_t* shared,
                                const std::int32_t* terms,
                                std::int32_t query_terms,
                                double* out,
                                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = shared[i] == 0 ? 0.0 : acc[i] / static_cast<double>(query_terms + terms[i] - shared[i]);
    }
}

constexpr Backend kScalar = {
    "scalar",
    scalar_reduce_sum,
    scalar_reduce_sum_squares,
    scalar_cosine_finalize,
    scalar_minmax_ratio_finalize,
    scalar_set_overlap_finalize,
    scalar_union_normalize_finalize,
};

const Backend&
resolve_active() {
    if (const char* env = std::getenv("BOWSIM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) {
            return scalar();
        }
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) {
            return avx2();
        }
    }
    if (avx2_supported()) {
        return avx2();
    }
    return scalar();
}

}  // namespace

const Backend&
scalar() {
    return kScalar;
}

#if !defined(BOWSIM_ENABLE_AVX2)

bool
avx2_supported() {
    return false;
}

const Backend&
avx2() {
    return kScalar;
}

#endif

const Backend&
active() {
    static const Backend& backend = resolve_active();
    return backend;
}

}  // namespace bowsim::kernels
