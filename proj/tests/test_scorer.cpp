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

#include <algorithm>
#include <optional>
#include <random>

#include "bowsim/scorer.hpp"
#include "support/test_support.hpp"

using namespace bowsim;
using testsupport::make_doc;

namespace {

// Pairwise scoring through the public measure functions.
double
pairwise_score(const MeasureConfig& config,
               const Document& x,
               const Document& y,
               const FrequencyIndex& index,
               const ClassTermStats* stats) {
    switch (config.measure) {
        case Measure::cosine:
            return cosine(weigh(x, config.weighting, index, stats), weigh(y, config.weighting, index, stats));
        case Measure::weighted_jaccard:
            return weighted_jaccard(weigh(x, config.weighting, index, stats),
                                    weigh(y, config.weighting, index, stats));
        case Measure::bm25:
            return bm25(x, y, index, config.bm25);
        case Measure::jaccard:
            return jaccard(x, y);
        case Measure::sp:
            return sp(x, y, index);
    }
    return 0.0;
}

std::vector<MeasureConfig>
all_configs() {
    std::vector<MeasureConfig> configs;
    for (const char* name : {"bm25", "jaccard", "sp"}) {
        configs.push_back(parse_measure_config(name));
    }
    for (const char* measure : {"cosine", "wjaccard"}) {
        for (const char* weighting : {"none", "tf", "idf", "tf-idf", "icf", "tf-icf"}) {
            MeasureConfig config;
            config.measure = parse_measure(measure);
            config.weighting = parse_weighting(weighting);
            configs.push_back(config);
        }
    }
    return configs;
}

}  // namespace

TEST_CASE("batch scoring is bit-identical to pairwise scoring") {
    std::mt19937_64 rng(67);
    testsupport::RandomCorpusParams params;
    params.min_docs = 8;
    params.max_docs = 40;
    params.num_terms = 20;
    params.max_terms_per_doc = 8;
    params.max_freq = 5;
    const auto configs = all_configs();
    for (int iter = 0; iter < 6; ++iter) {
        const Corpus corpus = testsupport::random_corpus(rng, params);
        const auto ids = testsupport::all_doc_ids(corpus);
        const FrequencyIndex index = FrequencyIndex::build(corpus);
        const ClassTermStats stats = class_term_stats(corpus);

        std::vector<Document> queries;
        for (std::size_t i = 0; i < 4 && i < corpus.size(); ++i) {
            queries.push_back(corpus.docs[i].doc);  // in-collection queries
        }
        for (int i = 0; i < 4; ++i) {
            queries.push_back(testsupport::random_query(rng, params, 5));  // external, with alien terms
        }

        for (const auto& config : configs) {
            const Scorer scorer(corpus, ids, index, config, &stats);
            Scorer::Workspace ws;
            for (const auto& query : queries) {
                scorer.score_all(query, ws);
                REQUIRE(ws.scores.size() == corpus.size());
                for (std::size_t d = 0; d < corpus.size(); ++d) {
                    const double expect = pairwise_score(config, query, corpus.docs[d].doc, index, &stats);
                    CHECK(ws.scores[d] == expect);
                }
            }
        }
    }
}

TEST_CASE("top_k matches a brute-force ranking oracle") {
    std::mt19937_64 rng(71);
    testsupport::RandomCorpusParams params;
    params.min_docs = 10;
    params.max_docs = 30;
    const auto configs = all_configs();
    const Corpus corpus = testsupport::random_corpus(rng, params);
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const ClassTermStats stats = class_term_stats(corpus);
    for (const auto& config : configs) {
        const Scorer scorer(corpus, ids, index, config, &stats);
        Scorer::Workspace ws;
        for (std::size_t q = 0; q < 5; ++q) {
            const Document query = testsupport::random_query(rng, params, 2);
            // oracle: full pairwise scoring, then a total-order sort
            std::vector<RankedEntry> expect;
            for (std::uint32_t d = 0; d < corpus.size(); ++d) {
                expect.push_back({d, pairwise_score(config, query, corpus.docs[d].doc, index, &stats)});
            }
            std::sort(expect.begin(), expect.end(), [](const RankedEntry& a, const RankedEntry& b) {
                if (a.score != b.score) {
                    return a.score > b.score;
                }
                return a.doc_id < b.doc_id;
            });
            for (std::size_t k : {std::size_t{1}, std::size_t{5}, corpus.size(), corpus.size() + 10}) {
                const RankedList ranked = scorer.top_k(query, k, ws);
                const std::size_t take = std::min(k, corpus.size());
                REQUIRE(ranked.size() == take);
                for (std::size_t r = 0; r < take; ++r) {
                    CHECK(ranked[r] == expect[r]);
                }
            }
        }
    }
}

TEST_CASE("ties break by ascending document id") {
    // two identical documents tie exactly on every measure
    Corpus corpus;
    corpus.docs.push_back({make_doc({{0, 1}, {1, 2}}), 0});
    corpus.docs.push_back({make_doc({{0, 2}}), 0});
    corpus.docs.push_back({make_doc({{0, 1}, {1, 2}}), 0});
    corpus.num_terms = 2;
    corpus.num_classes = 1;
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    for (const char* name : {"cosine", "bm25", "jaccard", "wjaccard", "sp"}) {
        const Scorer scorer(corpus, ids, index, parse_measure_config(name));
        const RankedList ranked = scorer.top_k(corpus.docs[0].doc, 3);
        REQUIRE(ranked.size() == 3);
        CHECK(ranked[0].doc_id == 0);
        CHECK(ranked[1].doc_id == 2);
        CHECK(ranked[0].score == ranked[1].score);
    }
}

TEST_CASE("query with only unseen terms yields all-zero scores in id order") {
    const Corpus corpus = testsupport::toy_corpus();
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const Document query = make_doc({{100, 1}, {200, 3}});
    for (const char* name : {"cosine", "bm25", "jaccard", "wjaccard", "sp"}) {
        const Scorer scorer(corpus, ids, index, parse_measure_config(name));
        const RankedList ranked = scorer.top_k(query, corpus.size());
        REQUIRE(ranked.size() == corpus.size());
        for (std::size_t r = 0; r < ranked.size(); ++r) {
            CHECK(ranked[r].doc_id == r);
            CHECK(ranked[r].score == 0.0);
        }
    }
}

TEST_CASE("exclude-self drops the query document") {
    const Corpus corpus = testsupport::toy_corpus();
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const Scorer scorer(corpus, ids, index, parse_measure_config("sp"));
    const RankedList with_self = scorer.top_k(corpus.docs[0].doc, 4);
    CHECK(with_self[0].doc_id == 0);
    const RankedList without = scorer.top_k(corpus.docs[0].doc, 4, std::optional<std::uint32_t>{0});
    CHECK(without.size() == 3);
    for (const auto& entry : without) {
        CHECK(entry.doc_id != 0);
    }
    // remaining order matches the unexcluded ranking
    CHECK(without[0] == with_self[1]);
    CHECK(without[1] == with_self[2]);
    CHECK(without[2] == with_self[3]);
}

TEST_CASE("scorer argument validation") {
    const Corpus corpus = testsupport::toy_corpus();
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const std::vector<std::uint32_t> empty;
    CHECK_THROWS_AS(Scorer(corpus, empty, index, parse_measure_config("sp")), std::invalid_argument);
    const Scorer scorer(corpus, ids, index, parse_measure_config("sp"));
    CHECK_THROWS_AS(scorer.top_k(corpus.docs[0].doc, 0), std::invalid_argument);
    MeasureConfig icf_config = parse_measure_config("cosine.icf");
    CHECK_THROWS_AS(Scorer(corpus, ids, index, icf_config), std::invalid_argument);
    const std::vector<std::uint32_t> bad_ids = {0, 99};
    CHECK_THROWS_AS(Scorer(corpus, bad_ids, index, parse_measure_config("sp")), std::invalid_argument);
}

TEST_CASE("one-shot top_k helper agrees with the scorer") {
    const Corpus corpus = testsupport::toy_corpus();
    const auto ids = testsupport::all_doc_ids(corpus);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const MeasureConfig config = parse_measure_config("cosine.tf-idf");
    const Scorer scorer(corpus, ids, index, config);
    CHECK(top_k(corpus.docs[1].doc, corpus, ids, index, config, 3) == scorer.top_k(corpus.docs[1].doc, 3));
}
