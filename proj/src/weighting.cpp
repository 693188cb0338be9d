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

#include "bowsim/weighting.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bowsim/detail/score_math.hpp"

namespace bowsim {

WeightingScheme
parse_weighting(std::string_view name) {
    if (name == "none") {
        return {DocFactor::raw, CollectionFactor::none};
    }
    if (name == "tf") {
        return {DocFactor::log_tf, CollectionFactor::none};
    }
    if (name == "idf") {
        return {DocFactor::raw, CollectionFactor::idf};
    }
    if (name == "tf-idf") {
        return {DocFactor::log_tf, CollectionFactor::idf};
    }
    if (name == "icf") {
        return {DocFactor::raw, CollectionFactor::icf};
    }
    if (name == "tf-icf") {
        return {DocFactor::log_tf, CollectionFactor::icf};
    }
    throw std::invalid_argument("unknown weighting scheme '" + std::string(name) + "'");
}

std::string
weighting_name(const WeightingScheme& scheme) {
    const bool tf = scheme.doc_factor == DocFactor::log_tf;
    switch (scheme.collection_factor) {
        case CollectionFactor::none:
            return tf ? "tf" : "none";
        case CollectionFactor::idf:
            return tf ? "tf-idf" : "idf";
        case CollectionFactor::icf:
            return tf ? "tf-icf" : "icf";
    }
    return "none";
}

ClassTermStats
class_term_stats(const Corpus& corpus) {
    std::vector<std::uint32_t> all(corpus.size());
    std::iota(all.begin(), all.end(), 0);
    return class_term_stats(corpus, all);
}

ClassTermStats
class_term_stats(const Corpus& corpus, std::span<const std::uint32_t> doc_ids) {
    ClassTermStats stats;
    stats.num_classes = corpus.num_classes;
    stats.class_freq.assign(corpus.num_terms, 0);
    // One bit per (term, class) pair, term-major.
    const std::size_t words_per_term = (corpus.num_classes + 63) / 64;
    std::vector<std::uint64_t> seen(words_per_term * corpus.num_terms, 0);
    for (std::uint32_t id : doc_ids) {
        if (id >= corpus.size()) {
            throw std::invalid_argument("class term stats: document id out of range");
        }
        const LabeledDocument& labeled = corpus.docs[id];
        for (TermId t : labeled.doc.terms) {
            std::uint64_t& word = seen[words_per_term * t + labeled.label / 64];
            const std::uint64_t bit = std::uint64_t{1} << (labeled.label % 64);
            if (!(word & bit)) {
                word |= bit;
                ++stats.class_freq[t];
            }
        }
    }
    return stats;
}

double
tf_factor(std::uint32_t freq) {
    return freq == 0 ? 0.0 : 1.0 + std::log(static_cast<double>(freq));
}

double
idf(const FrequencyIndex& index, TermId t) {
    const std::uint32_t n = index.doc_freq(t);
    if (n == 0) {
        throw std::invalid_argument("idf: term " + std::to_string(t) + " occurs in no collection document");
    }
    return std::log(static_cast<double>(index.num_docs()) / static_cast<double>(n));
}

double
idf_bm25(const FrequencyIndex& index, TermId t) {
    const std::uint32_t n = index.doc_freq(t);
    if (n == 0) {
        throw std::invalid_argument("idf_bm25: term " + std::to_string(t) + " occurs in no collection document");
    }
    return detail::idf_bm25_value(index.num_docs(), n);
}

double
icf(const ClassTermStats& stats, TermId t) {
    const std::uint32_t c = t < stats.class_freq.size() ? stats.class_freq[t] : 0;
    if (c == 0) {
        throw std::invalid_argument("icf: term " + std::to_string(t) + " occurs in no class");
    }
    return std::log(1.0 + static_cast<double>(stats.num_classes) / static_cast<double>(c));
}

WeightedVector
weigh(const Document& doc, const WeightingScheme& scheme, const FrequencyIndex& index, const ClassTermStats* stats) {
    if (scheme.collection_factor == CollectionFactor::icf && stats == nullptr) {
        throw std::invalid_argument("weigh: icf weighting requires class term stats");
    }
    WeightedVector weighted;
    weighted.terms.reserve(doc.terms.size());
    weighted.weights.reserve(doc.terms.size());
    for (std::size_t i = 0; i < doc.terms.size(); ++i) {
        const TermId t = doc.terms[i];
        const double doc_factor = scheme.doc_factor == DocFactor::raw ? static_cast<double>(doc.counts[i])
                                                                      : tf_factor(doc.counts[i]);
        double weight = doc_factor;
        if (scheme.collection_factor == CollectionFactor::idf) {
            const std::uint32_t n = index.doc_freq(t);
            if (n == 0) {
                continue;
            }
            weight *= std::log(static_cast<double>(index.num_docs()) / static_cast<double>(n));
        } else if (scheme.collection_factor == CollectionFactor::icf) {
            const std::uint32_t c = t < stats->class_freq.size() ? stats->class_freq[t] : 0;
            if (c == 0) {
                continue;
            }
            weight *= std::log(1.0 + static_cast<double>(stats->num_classes) / static_cast<double>(c));
        }
        if (weight == 0.0) {
            continue;
        }
        weighted.terms.push_back(t);
        weighted.weights.push_back(weight);
    }
    return weighted;
}

}  // namespace bowsim
