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

#include <cmath>
#include <cstdint>

namespace bowsim::detail {

// Shared expression shapes for the pairwise measures and the batch
// scorer. Both paths must evaluate the exact same IEEE expressions so
// that batch scoring is bit-identical to pairwise scoring.

inline double
idf_bm25_value(std::uint32_t num_docs, std::uint32_t doc_freq) {
    return std::log((static_cast<double>(num_docs) - static_cast<double>(doc_freq) + 0.5) /
                    (static_cast<double>(doc_freq) + 0.5));
}

// a * (1 - b + b * dl / avgdl), the document-length part of the BM25
// saturation denominator.
inline double
bm25_length_norm(double a, double b, std::uint64_t doc_length, double avg_doc_length) {
    return a * (1.0 - b + b * (static_cast<double>(doc_length) / avg_doc_length));
}

// v * (a + 1) / (v + length_norm)
inline double
bm25_tf_sat(std::uint32_t freq, double a_plus_one, double length_norm) {
    return (static_cast<double>(freq) * a_plus_one) / (static_cast<double>(freq) + length_norm);
}

// log(N / c) with the range count floored at one document.
inline double
sp_summand(std::uint32_t num_docs, std::uint32_t range_count) {
    const std::uint32_t c = range_count == 0 ? 1 : range_count;
    return std::log(static_cast<double>(num_docs) / static_cast<double>(c));
}

}  // namespace bowsim::detail
