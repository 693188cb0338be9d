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

#include "bowsim/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bowsim/detail/score_math.hpp"
#include "bowsim/kernels.hpp"

namespace bowsim {

Scorer::Scorer(const Corpus& corpus,
               std::span<const std::uint32_t> doc_ids,
               const FrequencyIndex& index,
               const MeasureConfig& config,
               const ClassTermStats* stats)
    : index_(&index), stats_(stats), config_(config), doc_ids_(doc_ids.begin(), doc_ids.end()) {
    validate(config_);
    if (doc_ids_.empty()) {
        throw std::invalid_argument("scorer: empty collection view");
    }
    if (index.num_terms() != corpus.num_terms) {
        throw std::invalid_argument("scorer: index does not match corpus dictionary");
    }
    if (config_.needs_class_stats() && stats_ == nullptr) {
        throw std::invalid_argument("scorer: icf weighting requires class term stats");
    }
    if (config_.measure == Measure::bm25 && !(index.avg_doc_length() > 0.0)) {
        throw std::domain_error("bm25: collection average document length is zero");
    }
    for (std::uint32_t id : doc_ids_) {
        if (id >= corpus.size()) {
            throw std::invalid_argument("scorer: document id out of range");
        }
    }

    const std::size_t view_size = doc_ids_.size();
    const std::uint32_t num_terms = index.num_terms();
    const auto& kernel = kernels::active();

    // Per-document sparse rows in the representation the measure consumes.
    std::vector<WeightedVector> weighted;
    const bool weighted_rows = config_.uses_weighting();
    if (weighted_rows) {
        weighted.reserve(view_size);
        if (config_.measure == Measure::cosine) {
            doc_norms_.resize(view_size);
        } else {
            doc_weight_sums_.resize(view_size);
        }
        for (std::size_t v = 0; v < view_size; ++v) {
            weighted.push_back(weigh(corpus.docs[doc_ids_[v]].doc, config_.weighting, index, stats_));
            const auto& w = weighted.back().weights;
            if (config_.measure == Measure::cosine) {
                doc_norms_[v] = std::sqrt(kernel.reduce_sum_squares(w.data(), w.size()));
            } else {
                doc_weight_sums_[v] = kernel.reduce_sum(w.data(), w.size());
            }
        }
    }

    std::vector<double> bm25_norms;
    if (config_.measure == Measure::bm25) {
        bm25_norms.resize(view_size);
        for (std::size_t v = 0; v < view_size; ++v) {
            bm25_norms[v] = detail::bm25_length_norm(
                config_.bm25.a, config_.bm25.b, corpus.docs[doc_ids_[v]].doc.length(), index.avg_doc_length());
        }
    }

    if (config_.measure == Measure::jaccard || config_.measure == Measure::sp) {
        doc_term_counts_.resize(view_size);
        for (std::size_t v = 0; v < view_size; ++v) {
            doc_term_counts_[v] = static_cast<std::int32_t>(corpus.docs[doc_ids_[v]].doc.num_terms());
        }
    }
    if (config_.measure == Measure::sp) {
        const std::uint32_t n = index.num_docs();
        log_ratio_.resize(std::size_t{n} + 1);
        log_ratio_[0] = std::log(static_cast<double>(n) / 1.0);
        for (std::uint32_t c = 1; c <= n; ++c) {
            log_ratio_[c] = std::log(static_cast<double>(n) / static_cast<double>(c));
        }
    }

    const auto row_terms = [&](std::size_t v) -> const std::vector<TermId>& {
        return weighted_rows ? weighted[v].terms : corpus.docs[doc_ids_[v]].doc.terms;
    };

    post_offsets_.assign(std::size_t{num_terms} + 1, 0);
    for (std::size_t v = 0; v < view_size; ++v) {
        for (TermId t : row_terms(v)) {
            ++post_offsets_[t + 1];
        }
    }
    for (std::uint32_t t = 0; t < num_terms; ++t) {
        post_offsets_[t + 1] += post_offsets_[t];
    }
    const std::uint64_t total = post_offsets_[num_terms];
    post_slots_.resize(total);
    const bool need_values = config_.measure != Measure::jaccard && config_.measure != Measure::sp;
    const bool need_freqs = config_.measure == Measure::sp;
    if (need_values) {
        post_values_.resize(total);
    }
    if (need_freqs) {
        post_freqs_.resize(total);
    }

    std::vector<std::uint64_t> cursor(post_offsets_.begin(), post_offsets_.end() - 1);
    const double a_plus_one = config_.bm25.a + 1.0;
    for (std::size_t v = 0; v < view_size; ++v) {
        const auto& terms = row_terms(v);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::uint64_t p = cursor[terms[i]]++;
            post_slots_[p] = static_cast<std::uint32_t>(v);
            switch (config_.measure) {
                case Measure::cosine:
                case Measure::weighted_jaccard:
                    post_values_[p] = weighted[v].weights[i];
                    break;
                case Measure::bm25:
                    post_values_[p] =
                        detail::bm25_tf_sat(corpus.docs[doc_ids_[v]].doc.counts[i], a_plus_one, bm25_norms[v]);
                    break;
                case Measure::sp:
                    post_freqs_[p] = corpus.docs[doc_ids_[v]].doc.counts[i];
                    break;
                case Measure::jaccard:
                    break;
            }
        }
    }
}

void
Scorer::score_all(const Document& query, Workspace& ws) const {
    const std::size_t view_size = doc_ids_.size();
    const std::uint32_t num_terms = index_->num_terms();
    const auto& kernel = kernels::active();
    ws.scores.resize(view_size);

    switch (config_.measure) {
        case Measure::cosine: {
            const WeightedVector q = weigh(query, config_.weighting, *index_, stats_);
            ws.acc.assign(view_size, 0.0);
            for (std::size_t i = 0; i < q.terms.size(); ++i) {
                const TermId t = q.terms[i];
                if (t >= num_terms) {
                    continue;
                }
                const double wq = q.weights[i];
                for (std::uint64_t p = post_offsets_[t]; p < post_offsets_[t + 1]; ++p) {
                    ws.acc[post_slots_[p]] += wq * post_values_[p];
                }
            }
            const double query_norm = std::sqrt(kernel.reduce_sum_squares(q.weights.data(), q.weights.size()));
            kernel.cosine_finalize(ws.acc.data(), doc_norms_.data(), query_norm, ws.scores.data(), view_size);
            break;
        }
        case Measure::weighted_jaccard: {
            const WeightedVector q = weigh(query, config_.weighting, *index_, stats_);
            ws.acc.assign(view_size, 0.0);
            for (std::size_t i = 0; i < q.terms.size(); ++i) {
                const TermId t = q.terms[i];
                if (t >= num_terms) {
                    continue;
                }
                const double wq = q.weights[i];
                for (std::uint64_t p = post_offsets_[t]; p < post_offsets_[t + 1]; ++p) {
                    ws.acc[post_slots_[p]] += std::min(wq, post_values_[p]);
                }
            }
            const double query_sum = kernel.reduce_sum(q.weights.data(), q.weights.size());
            kernel.minmax_ratio_finalize(
                ws.acc.data(), doc_weight_sums_.data(), query_sum, ws.scores.data(), view_size);
            break;
        }
        case Measure::bm25: {
            ws.acc.assign(view_size, 0.0);
            const double a_plus_one = config_.bm25.a + 1.0;
            const double query_norm =
                detail::bm25_length_norm(config_.bm25.a, config_.bm25.b, query.length(), index_->avg_doc_length());
            for (std::size_t i = 0; i < query.terms.size(); ++i) {
                const TermId t = query.terms[i];
                if (t >= num_terms) {
                    continue;
                }
                const std::uint32_t n = index_->doc_freq(t);
                if (n == 0) {
                    continue;
                }
                const double wq = detail::idf_bm25_value(index_->num_docs(), n) *
                                  detail::bm25_tf_sat(query.counts[i], a_plus_one, query_norm);
                for (std::uint64_t p = post_offsets_[t]; p < post_offsets_[t + 1]; ++p) {
                    ws.acc[post_slots_[p]] += wq * post_values_[p];
                }
            }
            std::copy(ws.acc.begin(), ws.acc.end(), ws.scores.begin());
            break;
        }
        case Measure::jaccard: {
            ws.overlap.assign(view_size, 0);
            for (TermId t : query.terms) {
                if (t >= num_terms) {
                    continue;
                }
                for (std::uint64_t p = post_offsets_[t]; p < post_offsets_[t + 1]; ++p) {
                    ++ws.overlap[post_slots_[p]];
                }
            }
            kernel.set_overlap_finalize(ws.overlap.data(),
                                        doc_term_counts_.data(),
                                        static_cast<std::int32_t>(query.num_terms()),
                                        ws.scores.data(),
                                        view_size);
            break;
        }
        case Measure::sp: {
            ws.acc.assign(view_size, 0.0);
            ws.overlap.assign(view_size, 0);
            for (std::size_t i = 0; i < query.terms.size(); ++i) {
                const TermId t = query.terms[i];
                if (t >= num_terms || post_offsets_[t] == post_offsets_[t + 1]) {
                    continue;
                }
                const std::uint32_t qf = query.counts[i];
                const auto cum = index_->cum(t);
                const std::uint32_t max_freq = static_cast<std::uint32_t>(cum.size() - 1);
                for (std::uint64_t p = post_offsets_[t]; p < post_offsets_[t + 1]; ++p) {
                    const std::uint32_t vf = post_freqs_[p];
                    const auto [lo, hi] = std::minmax(qf, vf);
                    // lo <= vf <= max_freq, so the posting document itself
                    // keeps the count at one or more.
                    const std::uint32_t count = cum[std::min(hi, max_freq)] - cum[lo - 1];
                    ws.acc[post_slots_[p]] += log_ratio_[count];
                    ++ws.overlap[post_slots_[p]];
                }
            }
            kernel.union_normalize_finalize(ws.acc.data(),
                                            ws.overlap.data(),
                                            doc_term_counts_.data(),
                                            static_cast<std::int32_t>(query.num_terms()),
                                            ws.scores.data(),
                                            view_size);
            break;
        }
    }
}

RankedList
Scorer::top_k(const Document& query, std::size_t k, Workspace& ws, std::optional<std::uint32_t> exclude_doc) const {
    if (k < 1) {
        throw std::invalid_argument("top_k: k must be at least 1");
    }
    score_all(query, ws);
    ws.order.clear();
    ws.order.reserve(doc_ids_.size());
    for (std::uint32_t slot = 0; slot < doc_ids_.size(); ++slot) {
        if (exclude_doc.has_value() && doc_ids_[slot] == *exclude_doc) {
            continue;
        }
        ws.order.push_back(slot);
    }
    const std::size_t take = std::min(k, ws.order.size());
    std::partial_sort(ws.order.begin(),
                      ws.order.begin() + static_cast<std::ptrdiff_t>(take),
                      ws.order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          if (ws.scores[a] != ws.scores[b]) {
                              return ws.scores[a] > ws.scores[b];
                          }
                          return doc_ids_[a] < doc_ids_[b];
                      });
    RankedList ranked(take);
    for (std::size_t r = 0; r < take; ++r) {
        ranked[r] = {doc_ids_[ws.order[r]], ws.scores[ws.order[r]]};
    }
    return ranked;
}

RankedList
Scorer::top_k(const Document& query, std::size_t k, std::optional<std::uint32_t> exclude_doc) const {
    Workspace ws;
    return top_k(query, k, ws, exclude_doc);
}

RankedList
top_k(const Document& query,
      const Corpus& corpus,
      std::span<const std::uint32_t> doc_ids,
      const FrequencyIndex& index,
      const MeasureConfig& config,
      std::size_t k,
      const ClassTermStats* stats,
      std::optional<std::uint32_t> exclude_doc) {
    Scorer scorer(corpus, doc_ids, index, config, stats);
    return scorer.top_k(query, k, exclude_doc);
}

}  // namespace bowsim
