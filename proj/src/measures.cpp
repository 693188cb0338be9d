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

#include "bowsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bowsim/detail/score_math.hpp"
#include "bowsim/kernels.hpp"

namespace bowsim {

void
validate_bm25_params(const Bm25Params& params) {
    if (!(params.a > 0.0)) {
        throw std::invalid_argument("bm25: parameter a must be positive");
    }
    if (!(params.b >= 0.0 && params.b <= 1.0)) {
        throw std::invalid_argument("bm25: parameter b must lie in [0, 1]");
    }
}

double
cosine(const WeightedVector& x, const WeightedVector& y) {
    double dot = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.terms.size() && j < y.terms.size()) {
        if (x.terms[i] < y.terms[j]) {
            ++i;
        } else if (y.terms[j] < x.terms[i]) {
            ++j;
        } else {
            dot += x.weights[i] * y.weights[j];
            ++i;
            ++j;
        }
    }
    if (dot == 0.0) {
        return 0.0;
    }
    const auto& k = kernels::active();
    const double norm_x = std::sqrt(k.reduce_sum_squares(x.weights.data(), x.weights.size()));
    const double norm_y = std::sqrt(k.reduce_sum_squares(y.weights.data(), y.weights.size()));
    return dot / (norm_x * norm_y);
}

double
bm25(const Document& x, const Document& y, const FrequencyIndex& index, const Bm25Params& params) {
    validate_bm25_params(params);
    if (!(index.avg_doc_length() > 0.0)) {
        throw std::domain_error("bm25: collection average document length is zero");
    }
    const double a_plus_one = params.a + 1.0;
    const double norm_x = detail::bm25_length_norm(params.a, params.b, x.length(), index.avg_doc_length());
    const double norm_y = detail::bm25_length_norm(params.a, params.b, y.length(), index.avg_doc_length());
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.terms.size() && j < y.terms.size()) {
        if (x.terms[i] < y.terms[j]) {
            ++i;
        } else if (y.terms[j] < x.terms[i]) {
            ++j;
        } else {
            const std::uint32_t n = index.doc_freq(x.terms[i]);
            if (n != 0) {
                const double weight =
                    detail::idf_bm25_value(index.num_docs(), n) * detail::bm25_tf_sat(x.counts[i], a_plus_one, norm_x);
                sum += weight * detail::bm25_tf_sat(y.counts[j], a_plus_one, norm_y);
            }
            ++i;
            ++j;
        }
    }
    return sum;
}

double
jaccard(const Document& x, const Document& y) {
    std::size_t shared = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.terms.size() && j < y.terms.size()) {
        if (x.terms[i] < y.terms[j]) {
            ++i;
        } else if (y.terms[j] < x.terms[i]) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    if (shared == 0) {
        return 0.0;
    }
    const std::size_t unions = x.terms.size() + y.terms.size() - shared;
    return static_cast<double>(shared) / static_cast<double>(unions);
}

double
weighted_jaccard(const WeightedVector& x, const WeightedVector& y) {
    double min_sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.terms.size() && j < y.terms.size()) {
        if (x.terms[i] < y.terms[j]) {
            ++i;
        } else if (y.terms[j] < x.terms[i]) {
            ++j;
        } else {
            min_sum += std::min(x.weights[i], y.weights[j]);
            ++i;
            ++j;
        }
    }
    if (min_sum == 0.0) {
        return 0.0;
    }
    const auto& k = kernels::active();
    const double sum_x = k.reduce_sum(x.weights.data(), x.weights.size());
    const double sum_y = k.reduce_sum(y.weights.data(), y.weights.size());
    return min_sum / ((sum_x + sum_y) - min_sum);
}

double
sp(const Document& x, const Document& y, const FrequencyIndex& index) {
    double sum = 0.0;
    std::size_t shared = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.terms.size() && j < y.terms.size()) {
        if (x.terms[i] < y.terms[j]) {
            ++i;
        } else if (y.terms[j] < x.terms[i]) {
            ++j;
        } else {
            const auto [lo, hi] = std::minmax(x.counts[i], y.counts[j]);
            sum += detail::sp_summand(index.num_docs(), index.range_count(x.terms[i], lo, hi));
            ++shared;
            ++i;
            ++j;
        }
    }
    if (shared == 0) {
        return 0.0;
    }
    const std::size_t unions = x.terms.size() + y.terms.size() - shared;
    return sum / static_cast<double>(unions);
}

Measure
parse_measure(std::string_view name) {
    if (name == "cosine") {
        return Measure::cosine;
    }
    if (name == "bm25") {
        return Measure::bm25;
    }
    if (name == "jaccard") {
        return Measure::jaccard;
    }
    if (name == "wjaccard") {
        return Measure::weighted_jaccard;
    }
    if (name == "sp") {
        return Measure::sp;
    }
    throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

std::string_view
measure_name(Measure measure) {
    switch (measure) {
        case Measure::cosine:
            return "cosine";
        case Measure::bm25:
            return "bm25";
        case Measure::jaccard:
            return "jaccard";
        case Measure::weighted_jaccard:
            return "wjaccard";
        case Measure::sp:
            return "sp";
    }
    return "cosine";
}

std::string
MeasureConfig::display_name() const {
    std::string name(measure_name(measure));
    if (uses_weighting() && !weighting.is_identity()) {
        name += '.';
        name += weighting_name(weighting);
    }
    return name;
}

void
validate(const MeasureConfig& config) {
    if (!config.uses_weighting() && !config.weighting.is_identity()) {
        throw std::invalid_argument("measure '" + std::string(measure_name(config.measure)) +
                                    "' does not accept a weighting scheme");
    }
    if (config.measure == Measure::bm25) {
        validate_bm25_params(config.bm25);
    }
}

MeasureConfig
parse_measure_config(std::string_view text, const Bm25Params& bm25_defaults) {
    MeasureConfig config;
    config.bm25 = bm25_defaults;
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        config.measure = parse_measure(text);
    } else {
        config.measure = parse_measure(text.substr(0, dot));
        config.weighting = parse_weighting(text.substr(dot + 1));
    }
    validate(config);
    return config;
}

}  // namespace bowsim
