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

#include "bowsim/weighting.hpp"
#include "support/test_support.hpp"

using namespace bowsim;
using testsupport::make_doc;

TEST_CASE("tf_factor") {
    CHECK(tf_factor(0) == 0.0);
    CHECK(tf_factor(1) == 1.0);
    CHECK(tf_factor(2) == doctest::Approx(1.6931471805599454).epsilon(1e-15));
}

TEST_CASE("idf on the toy collection") {
    const FrequencyIndex index = FrequencyIndex::build(testsupport::toy_corpus());
    CHECK(idf(index, 3) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
    CHECK(idf(index, 1) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(idf(index, 0), std::invalid_argument);
    CHECK_THROWS_AS(idf(index, 99), std::invalid_argument);
}

TEST_CASE("idf is zero for a term in every document") {
    Corpus corpus;
    corpus.docs.push_back({make_doc({{0, 1}}), 0});
    corpus.docs.push_back({make_doc({{0, 2}, {1, 1}}), 0});
    corpus.num_terms = 2;
    corpus.num_classes = 1;
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    CHECK(idf(index, 0) == 0.0);
    CHECK(idf(index, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("idf_bm25 values and signs") {
    const FrequencyIndex index = FrequencyIndex::build(testsupport::toy_corpus());
    // n = 3 of N = 4: log(1.5 / 3.5)
    CHECK(idf_bm25(index, 1) == doctest::Approx(-0.8472978603872037).epsilon(1e-15));
    // n = 2 of N = 4: exactly log(1) = 0
    CHECK(idf_bm25(index, 3) == 0.0);
    CHECK_THROWS_AS(idf_bm25(index, 0), std::invalid_argument);
}

TEST_CASE("icf") {
    ClassTermStats stats;
    stats.num_classes = 4;
    stats.class_freq = {4, 2, 1, 0};
    CHECK(icf(stats, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(icf(stats, 1) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(icf(stats, 2) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
    CHECK_THROWS_AS(icf(stats, 3), std::invalid_argument);
    CHECK_THROWS_AS(icf(stats, 9), std::invalid_argument);
}

TEST_CASE("icf of an everywhere-term equals log 2 regardless of class count") {
    for (std::uint32_t c = 1; c <= 12; ++c) {
        ClassTermStats stats;
        stats.num_classes = c;
        stats.class_freq = {c};
        CHECK(icf(stats, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    }
}

TEST_CASE("class_term_stats on the toy collection") {
    const Corpus corpus = testsupport::toy_corpus();
    const ClassTermStats stats = class_term_stats(corpus);
    CHECK(stats.num_classes == 2);
    REQUIRE(stats.class_freq.size() == 4);
    CHECK(stats.class_freq[0] == 0);
    CHECK(stats.class_freq[1] == 2);  // t1 in d0 (class 0) and d3 (class 1)
    CHECK(stats.class_freq[2] == 2);
    CHECK(stats.class_freq[3] == 2);  // t3 in d1 (class 0) and d3 (class 1)
}

TEST_CASE("class_term_stats over a view sees only view classes") {
    const Corpus corpus = testsupport::toy_corpus();
    const std::vector<std::uint32_t> view = {0, 1};  // class 0 only
    const ClassTermStats stats = class_term_stats(corpus, view);
    CHECK(stats.class_freq[1] == 1);
    CHECK(stats.class_freq[2] == 1);
    CHECK(stats.class_freq[3] == 1);
}

TEST_CASE("weigh with identity scheme keeps raw counts") {
    const FrequencyIndex index = FrequencyIndex::build(testsupport::toy_corpus());
    const Document doc = make_doc({{1, 2}, {3, 5}});
    const WeightedVector w = weigh(doc, parse_weighting("none"), index);
    REQUIRE(w.terms == doc.terms);
    CHECK(w.weights == std::vector<double>{2.0, 5.0});
}

TEST_CASE("weigh tf-idf on the toy collection") {
    const Corpus corpus = testsupport::toy_corpus();
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const WeightedVector w = weigh(corpus.docs[0].doc, parse_weighting("tf-idf"), index);
    REQUIRE(w.terms == std::vector<TermId>{1, 2});
    CHECK(w.weights[0] == doctest::Approx(0.28768207245178085).epsilon(1e-15));
    CHECK(w.weights[1] == doctest::Approx(0.4870880898693747).epsilon(1e-15));
}

TEST_CASE("weigh drops terms without collection evidence") {
    const FrequencyIndex index = FrequencyIndex::build(testsupport::toy_corpus());
    // term 0 unseen, term 99 out of dictionary
    const Document doc = make_doc({{0, 3}, {1, 1}, {99, 2}});
    const WeightedVector w = weigh(doc, parse_weighting("idf"), index);
    CHECK(w.terms == std::vector<TermId>{1});
    // identity scheme keeps them
    CHECK(weigh(doc, parse_weighting("none"), index).terms == doc.terms);
}

TEST_CASE("weigh drops zero idf terms") {
    Corpus corpus;
    corpus.docs.push_back({make_doc({{0, 1}, {1, 1}}), 0});
    corpus.docs.push_back({make_doc({{0, 2}}), 0});
    corpus.num_terms = 2;
    corpus.num_classes = 1;
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const WeightedVector w = weigh(corpus.docs[0].doc, parse_weighting("tf-idf"), index);
    CHECK(w.terms == std::vector<TermId>{1});
}

TEST_CASE("weigh with icf requires stats") {
    const Corpus corpus = testsupport::toy_corpus();
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    CHECK_THROWS_AS(weigh(corpus.docs[0].doc, parse_weighting("icf"), index), std::invalid_argument);
    const ClassTermStats stats = class_term_stats(corpus);
    const WeightedVector w = weigh(corpus.docs[0].doc, parse_weighting("icf"), index, &stats);
    REQUIRE(w.terms == std::vector<TermId>{1, 2});
    CHECK(w.weights[0] == doctest::Approx(1.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(w.weights[1] == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("weigh on binary documents: raw equals log-tf") {
    std::mt19937_64 rng(29);
    testsupport::RandomCorpusParams params;
    params.binary = true;
    const Corpus corpus = testsupport::random_corpus(rng, params);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    for (const auto& labeled : corpus.docs) {
        CHECK(weigh(labeled.doc, parse_weighting("idf"), index) ==
              weigh(labeled.doc, parse_weighting("tf-idf"), index));
    }
}

TEST_CASE("weigh never invents terms and keeps weights positive") {
    std::mt19937_64 rng(31);
    const Corpus corpus = testsupport::random_corpus(rng);
    const FrequencyIndex index = FrequencyIndex::build(corpus);
    const ClassTermStats stats = class_term_stats(corpus);
    const char* names[] = {"none", "tf", "idf", "tf-idf", "icf", "tf-icf"};
    for (const char* name : names) {
        for (const auto& labeled : corpus.docs) {
            const WeightedVector w = weigh(labeled.doc, parse_weighting(name), index, &stats);
            CHECK(w.terms.size() <= labeled.doc.terms.size());
            for (std::size_t i = 0; i < w.terms.size(); ++i) {
                CHECK(labeled.doc.count_of(w.terms[i]) > 0);
                CHECK(w.weights[i] > 0.0);
                CHECK(std::isfinite(w.weights[i]));
            }
        }
    }
}

TEST_CASE("weighting scheme names round-trip") {
    const char* names[] = {"none", "tf", "idf", "tf-idf", "icf", "tf-icf"};
    for (const char* name : names) {
        CHECK(weighting_name(parse_weighting(name)) == name);
    }
    CHECK_THROWS_AS(parse_weighting("tfidf"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weighting(""), std::invalid_argument);
}
