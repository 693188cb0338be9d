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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bowsim/corpus.hpp"
#include "bowsim/frequency_index.hpp"

namespace bowsim {

enum class DocFactor {
    raw,     // x_i
    log_tf,  // 1 + log(x_i)
};

enum class CollectionFactor {
    none,
    idf,  // log(N / n_i)
    icf,  // log(1 + C / c_i)
};

struct WeightingScheme {
    DocFactor doc_factor = DocFactor::raw;
    CollectionFactor collection_factor = CollectionFactor::none;

    bool
    is_identity() const {
        return doc_factor == DocFactor::raw && collection_factor == CollectionFactor::none;
    }

    bool operator==(const WeightingScheme&) const = default;
};

// Scheme names: none, tf, idf, tf-idf, icf, tf-icf.
WeightingScheme parse_weighting(std::string_view name);
std::string weighting_name(const WeightingScheme& scheme);

// Sparse weighted document: parallel arrays sorted by ascending term id,
// weights strictly positive.
struct WeightedVector {
    std::vector<TermId> terms;
    std::vector<double> weights;

    std::size_t
    num_terms() const {
        return terms.size();
    }

    bool operator==(const WeightedVector&) const = default;
};

// Per-term class evidence: c_i counts the distinct classes whose
// documents contain the term.
struct ClassTermStats {
    std::uint32_t num_classes = 0;
    std::vector<std::uint32_t> class_freq;

    bool operator==(const ClassTermStats&) const = default;
};

ClassTermStats class_term_stats(const Corpus& corpus);
ClassTermStats class_term_stats(const Corpus& corpus, std::span<const std::uint32_t> doc_ids);

// 0 for freq 0, else 1 + log(freq).
double tf_factor(std::uint32_t freq);

// log(N / n_i). Throws std::invalid_argument when the term occurs in no
// collection document.
double idf(const FrequencyIndex& index, TermId t);

// log((N - n_i + 0.5) / (n_i + 0.5)), negative when n_i > N / 2. Throws
// like idf on absent terms.
double idf_bm25(const FrequencyIndex& index, TermId t);

// log(1 + C / c_i). Throws std::invalid_argument when c_i = 0.
double icf(const ClassTermStats& stats, TermId t);

// Applies the scheme to a document. Terms without collection evidence
// (n_i = 0 under idf, c_i = 0 under icf) never receive weight and are
// dropped, as are terms whose combined weight is exactly zero (idf of a
// term present in every document). `stats` is required exactly when the
// scheme uses icf.
WeightedVector weigh(const Document& doc,
                     const WeightingScheme& scheme,
                     const FrequencyIndex& index,
                     const ClassTermStats* stats = nullptr);

}  // namespace bowsim
