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

#include <optional>
#include <span>
#include <vector>

#include "bowsim/measures.hpp"

namespace bowsim {

struct RankedEntry {
    std::uint32_t doc_id = 0;
    double score = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

using RankedList = std::vector<RankedEntry>;

// Scores queries against a fixed collection view under a fixed measure
// configuration. Construction inverts the view into per-term postings and
// precomputes per-document statistics; scoring is term-at-a-time
// accumulation followed by a dense finalize pass.
//
// Scores are bit-identical to the pairwise measure functions: both paths
// accumulate shared-term contributions in ascending term-id order and
// evaluate the same IEEE expressions.
//
// The corpus, index and stats passed to the constructor must outlive the
// scorer. The index must be built over exactly the documents in
// `doc_ids`.
class Scorer {
public:
    // Reusable per-thread scratch space.
    struct Workspace {
        std::vector<double> acc;
        std::vector<std::int32_t> overlap;
        std::vector<double> scores;
        std::vector<std::uint32_t> order;
    };

    Scorer(const Corpus& corpus,
           std::span<const std::uint32_t> doc_ids,
           const FrequencyIndex& index,
           const MeasureConfig& config,
           const ClassTermStats* stats = nullptr);

    std::span<const std::uint32_t>
    doc_ids() const {
        return doc_ids_;
    }

    const MeasureConfig&
    config() const {
        return config_;
    }

    // Scores the query against every view document into ws.scores, in
    // view order.
    void score_all(const Document& query, Workspace& ws) const;

    // Top k view documents ordered by descending score, ties broken by
    // ascending document id. Returns fewer than k entries when the view
    // (minus the excluded document) is smaller. Requires k >= 1.
    RankedList top_k(const Document& query,
                     std::size_t k,
                     Workspace& ws,
                     std::optional<std::uint32_t> exclude_doc = std::nullopt) const;
    RankedList top_k(const Document& query,
                     std::size_t k,
                     std::optional<std::uint32_t> exclude_doc = std::nullopt) const;

private:
    const FrequencyIndex* index_ = nullptr;
    const ClassTermStats* stats_ = nullptr;
    MeasureConfig config_;
    std::vector<std::uint32_t> doc_ids_;

    // Postings over term ids [0, index.num_terms()), slots ascending in
    // view order within each term.
    std::vector<std::uint64_t> post_offsets_;
    std::vector<std::uint32_t> post_slots_;
    std::vector<double> post_values_;        // weights (cosine, wjaccard) or BM25 saturations
    std::vector<std::uint32_t> post_freqs_;  // raw frequencies (sp)

    std::vector<double> doc_norms_;             // cosine
    std::vector<double> doc_weight_sums_;       // wjaccard
    std::vector<std::int32_t> doc_term_counts_;  // jaccard, sp
    std::vector<double> log_ratio_;             // sp: log(N / c) for c in [0, N]
};

// One-shot convenience: builds a scorer over the view and ranks.
RankedList top_k(const Document& query,
                 const Corpus& corpus,
                 std::span<const std::uint32_t> doc_ids,
                 const FrequencyIndex& index,
                 const MeasureConfig& config,
                 std::size_t k,
                 const ClassTermStats* stats = nullptr,
                 std::optional<std::uint32_t> exclude_doc = std::nullopt);

}  // namespace bowsim
