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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bowsim/kernels.hpp"

using namespace bowsim;

namespace {

struct Inputs {
    std::vector<double> dot;
    std::vector<double> norms;
    std::vector<double> sums;
    std::vector<std::int32_t> shared;
    std::vector<std::int32_t> terms;
};

Inputs
random_inputs(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> value(0.0, 8.0);
    std::uniform_int_distribution<std::int32_t> small(0, 12);
    Inputs in;
    in.dot.resize(n);
    in.norms.resize(n);
    in.sums.resize(n);
    in.shared.resize(n);
    in.terms.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // sprinkle exact zeros to exercise the guarded lanes
        in.dot[i] = i % 3 == 0 ? 0.0 : value(rng);
        in.norms[i] = 0.5 + value(rng);
        in.sums[i] = in.dot[i] + value(rng);
        in.shared[i] = i % 4 == 0 ? 0 : small(rng);
        in.terms[i] = in.shared[i] + small(rng) + 1;
    }
    return in;
}

}  // namespace

TEST_CASE("scalar reductions") {
    const auto& k = kernels::scalar();
    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(k.reduce_sum(v.data(), v.size()) == 15.0);
    CHECK(k.reduce_sum_squares(v.data(), v.size()) == 55.0);
    CHECK(k.reduce_sum(v.data(), 0) == 0.0);
    CHECK(k.reduce_sum_squares(v.data(), 0) == 0.0);
}

TEST_CASE("scalar finalize semantics") {
    const auto& k = kernels::scalar();
    const std::vector<double> dot = {0.0, 6.0};
    const std::vector<double> norms = {2.0, 3.0};
    std::vector<double> out(2);
    k.cosine_finalize(dot.data(), norms.data(), 2.0, out.data(), 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 1.0);

    const std::vector<double> min_sum = {0.0, 2.0};
    const std::vector<double> sums = {5.0, 4.0};
    k.minmax_ratio_finalize(min_sum.data(), sums.data(), 2.0, out.data(), 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);  // 2 / (2 + 4 - 2)

    const std::vector<std::int32_t> shared = {0, 2};
    const std::vector<std::int32_t> terms = {4, 4};
    k.set_overlap_finalize(shared.data(), terms.data(), 2, out.data(), 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);  // 2 / (2 + 4 - 2)

    const std::vector<double> acc = {3.0, 3.0};
    k.union_normalize_finalize(acc.data(), shared.data(), terms.data(), 2, out.data(), 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.75);  // 3 / (2 + 4 - 2)
}

TEST_CASE("active backend is usable") {
    const auto& k = kernels::active();
    CHECK(k.name != nullptr);
    const std::vector<double> v = {1.5, 2.5};
    CHECK(k.reduce_sum(v.data(), v.size()) == 4.0);
}

TEST_CASE("avx2 finalize kernels are bit-identical to scalar") {
    if (!kernels::avx2_supported()) {
        return;
    }
    const auto& s = kernels::scalar();
    const auto& a = kernels::avx2();
    std::mt19937_64 rng(37);
    for (std::size_t n = 0; n <= 40; ++n) {
        const Inputs in = random_inputs(rng, n);
        std::vector<double> expect(n);
        std::vector<double> got(n);

        s.cosine_finalize(in.dot.data(), in.norms.data(), 1.75, expect.data(), n);
        a.cosine_finalize(in.dot.data(), in.norms.data(), 1.75, got.data(), n);
        CHECK(expect == got);

        s.minmax_ratio_finalize(in.dot.data(), in.sums.data(), 3.25, expect.data(), n);
        a.minmax_ratio_finalize(in.dot.data(), in.sums.data(), 3.25, got.data(), n);
        CHECK(expect == got);

        s.set_overlap_finalize(in.shared.data(), in.terms.data(), 7, expect.data(), n);
        a.set_overlap_finalize(in.shared.data(), in.terms.data(), 7, got.data(), n);
        CHECK(expect == got);

        s.union_normalize_finalize(in.dot.data(), in.shared.data(), in.terms.data(), 7, expect.data(), n);
        a.union_normalize_finalize(in.dot.data(), in.shared.data(), in.terms.data(), 7, got.data(), n);
        CHECK(expect == got);
    }
}

TEST_CASE("avx2 reductions agree with scalar to rounding") {
    if (!kernels::avx2_supported()) {
        return;
    }
    const auto& s = kernels::scalar();
    const auto& a = kernels::avx2();
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> value(-4.0, 9.0);
    for (std::size_t n = 0; n <= 67; ++n) {
        std::vector<double> v(n);
        for (auto& x : v) {
            x = value(rng);
        }
        CHECK(a.reduce_sum(v.data(), n) ==
              doctest::Approx(s.reduce_sum(v.data(), n)).epsilon(1e-12));
        CHECK(a.reduce_sum_squares(v.data(), n) ==
              doctest::Approx(s.reduce_sum_squares(v.data(), n)).epsilon(1e-12));
    }
}
