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

#include <string>
#include <string_view>

#include "bowsim/corpus.hpp"
#include "bowsim/frequency_index.hpp"
#include "bowsim/weighting.hpp"

namespace bowsim {

struct Bm25Params {
    double a = 1.2;   // term-frequency saturation strength
    double b = 0.95;  // document-length normalization mix

    bool operator==(const Bm25Params&) const = default;
};

// Throws std::invalid_argument unless a > 0 and 0 <= b <= 1.
void validate_bm25_params(const Bm25Params& params);

// All similarity scores accumulate shared-term contributions in ascending
// term-id order; degenerate inputs (no shared mass) score exactly 0.

// dot(x, y) / (|x| * |y|) over weighted vectors.
double cosine(const WeightedVector& x, const WeightedVector& y);

// Symmetric BM25: sum over shared terms of
//   idf_bm25(t) * sat(x_t, dl_x) * sat(y_t, dl_y),
// sat(v, dl) = v (a + 1) / (v + a (1 - b + b dl / avgdl)).
// Shared terms absent from the collection contribute nothing. Throws
// std::domain_error when the collection average document length is zero.
double bm25(const Document& x, const Document& y, const FrequencyIndex& index, const Bm25Params& params = {});

// |T_x cap T_y| / |T_x cup T_y| on term sets; counts are ignored.
double jaccard(const Document& x, const Document& y);

// sum_t min(x_t, y_t) / sum_t max(x_t, y_t) over weighted vectors.
double weighted_jaccard(const WeightedVector& x, const WeightedVector& y);

// (1 / |T_x cup T_y|) * sum over shared terms of log(N / c_t), where c_t
// counts collection documents whose frequency of t lies within
// [min(x_t, y_t), max(x_t, y_t)], floored at one document.
double sp(const Document& x, const Document& y, const FrequencyIndex& index);

enum class Measure {
    cosine,
    bm25,
    jaccard,
    weighted_jaccard,
    sp,
};

// Measure names: cosine, bm25, jaccard, wjaccard, sp.
Measure parse_measure(std::string_view name);
std::string_view measure_name(Measure measure);

// A measure plus its knobs. Weighting applies only to cosine and
// wjaccard; the other measures consume raw frequencies.
struct MeasureConfig {
    Measure measure = Measure::cosine;
    WeightingScheme weighting;
    Bm25Params bm25;

    bool
    uses_weighting() const {
        return measure == Measure::cosine || measure == Measure::weighted_jaccard;
    }

    bool
    needs_class_stats() const {
        return uses_weighting() && weighting.collection_factor == CollectionFactor::icf;
    }

    // "bm25", "cosine.tf-idf", "wjaccard", ... (identity weighting is
    // left implicit).
    std::string display_name() const;

    bool operator==(const MeasureConfig&) const = default;
};

// Throws std::invalid_argument on invalid combinations (weighting on a
// raw-frequency measure, out-of-range BM25 parameters).
void validate(const MeasureConfig& config);

// Parses "measure" or "measure.weighting", e.g. "sp", "cosine.tf-idf".
MeasureConfig parse_measure_config(std::string_view text, const Bm25Params& bm25_defaults = {});

}  // namespace bowsim
